#include <doctest.h>

#include <cmath>
#include <limits>

#include "fracnoether/errors.hpp"
#include "fracnoether/grid.hpp"
#include "fracnoether/residual.hpp"

using namespace fracnoether;

TEST_CASE("grid nodes are uniform and hit both ends") {
  const Grid g(0.5, 2.0, 6);
  CHECK(g.size() == 7);
  CHECK(g.h() == doctest::Approx(0.25));
  CHECK(g.node(0) == 0.5);
  CHECK(g.node(6) == 2.0);
  CHECK(g.nodes().size() == 7);
}

TEST_CASE("grid and order validation") {
  CHECK_THROWS_AS(Grid(1.0, 0.0, 10), PreconditionError);
  CHECK_THROWS_AS(Grid(0.0, 1.0, 1), PreconditionError);
  CHECK_THROWS_AS(FracOrder(0.0), PreconditionError);
  CHECK_THROWS_AS(FracOrder(std::numeric_limits<double>::quiet_NaN()), PreconditionError);
  CHECK(FracOrder(0.5).n() == 1);
  CHECK(FracOrder(1.0).is_integer());
}

TEST_CASE("sampled function storage is node-major") {
  const Grid g(0.0, 1.0, 2);
  SampledFunction f(g, 2, {1, 2, 3, 4, 5, 6});
  CHECK(f(1, 0) == 3);
  CHECK(f(2, 1) == 6);
  CHECK(f.component(1) == std::vector<double>{2, 4, 6});
  CHECK_THROWS_AS(SampledFunction(g, 2, {1, 2, 3}), DimensionMismatch);
  CHECK_THROWS_AS(SampledFunction::checked(g, 1, {1, std::numeric_limits<double>::quiet_NaN(), 2}),
                  PreconditionError);
}

TEST_CASE("arithmetic, reflection and endpoint filling") {
  const Grid g(0.0, 1.0, 4);
  auto f = SampledFunction::from_function(g, [](double t) { return t; });
  auto r = reflect(f);
  CHECK(r(0) == doctest::Approx(1.0));
  CHECK(r(4) == doctest::Approx(0.0));
  auto s = f + 2.0 * r;
  CHECK(s(1) == doctest::Approx(0.25 + 1.5));
  SampledFunction m(g, 1, {std::nan(""), 1.0, 2.0, 3.0, std::nan("")});
  CHECK(m.is_marked(0));
  auto filled = fill_singular_endpoints(m);
  CHECK(filled(0) == doctest::Approx(0.0));
  CHECK(filled(4) == doctest::Approx(4.0));
  CHECK_THROWS_AS(f += SampledFunction(Grid(0.0, 1.0, 5), 1), GridMismatch);
}

TEST_CASE("residual report excludes the boundary band") {
  const Grid g(0.0, 1.0, 10);
  SampledFunction r(g, 1);
  r(0) = std::nan("");
  r(1) = 100.0;
  r(5) = -0.5;
  const ResidualReport rep = make_report(r, 2);
  CHECK(rep.sup_norm == doctest::Approx(0.5));
  CHECK(rep.l2_norm == doctest::Approx(std::sqrt(0.1 * 0.25)));
  CHECK(rep.passes(0.5));
  CHECK_FALSE(rep.passes(0.4));
  const ResidualReport wide = make_report(r, 0);
  CHECK(std::isnan(wide.sup_norm));
  CHECK_FALSE(wide.passes(1e300));
}

TEST_CASE("certification tolerance scales as h^min(1, 2 - alpha)") {
  const Grid g(0.0, 1.0, 100);
  CHECK(certification_tolerance(g, FracOrder(0.5)) == doctest::Approx(10.0 * 0.01));
  CHECK(certification_tolerance(g, FracOrder(1.0), 2.0) == doctest::Approx(0.02));
}
