#include <doctest.h>

#include <cmath>

#include "fracnoether/errors.hpp"
#include "fracnoether/frac_ops.hpp"
#include "fracnoether/problems.hpp"
#include "oracles.hpp"

using namespace fracnoether;
using problems::Multipliers;

TEST_CASE("example 1 extremal: velocity, constraint and EL residual") {
  const auto problem = oracle::example1(0.5, 1000);
  const auto y = oracle::sample(problem.grid(), [](double t) { return oracle::example1_y(t, 0.5); });
  const auto v = problems::frac_velocity(y, problem.order());
  const auto t2 = oracle::sample(problem.grid(), [](double t) { return t * t; });
  CHECK(oracle::interior_sup_diff(v, t2, 2) < 2e-3);
  CHECK(problems::constraint_values(problem, y)[0] == doctest::Approx(0.2).epsilon(1e-4));
  const auto el = problems::euler_lagrange_residual(problem, {{2.0}}, y);
  CHECK(el.passes(certification_tolerance(problem.grid(), problem.order())));
}

TEST_CASE("EL residual converges with the grid") {
  double previous = 0.0;
  for (std::size_t m : {200u, 400u, 800u}) {
    const auto problem = oracle::example1(0.5, m);
    const auto y = oracle::sample(problem.grid(), [](double t) { return oracle::example1_y(t, 0.5); });
    const double sup = problems::euler_lagrange_residual(problem, {{2.0}}, y).sup_norm;
    if (previous > 0.0) CHECK(sup < previous);
    previous = sup;
  }
}

TEST_CASE("wrong multiplier or perturbed trajectory fails certification") {
  const auto problem = oracle::example1(0.5, 500);
  const double tol = certification_tolerance(problem.grid(), problem.order());
  const auto y = oracle::sample(problem.grid(), [](double t) { return oracle::example1_y(t, 0.5); });
  CHECK_FALSE(problems::euler_lagrange_residual(problem, {{1.0}}, y).passes(tol));
  const auto bumped = oracle::sample(problem.grid(), [](double t) {
    return oracle::example1_y(t, 0.5) + 0.1 * std::sin(M_PI * t);
  });
  CHECK(problems::euler_lagrange_residual(problem, {{2.0}}, bumped).sup_norm > 10.0 * tol);
}

TEST_CASE("augmented Lagrangian and objective") {
  const auto problem = oracle::example1(0.5, 400);
  const auto F = problems::augmented_lagrangian(problem, {{2.0}});
  const double q[] = {0.0};
  const double v[] = {0.3};
  CHECK(F(0.5, q, v) == doctest::Approx(std::pow(0.5, 4) + 0.09 - 2.0 * 0.25 * 0.3));
  const auto y = oracle::sample(problem.grid(), [](double t) { return oracle::example1_y(t, 0.5); });
  // int (t^4 + t^4) dt = 2/5
  CHECK(problems::objective_value(problem, y) == doctest::Approx(0.4).epsilon(2e-3));
  const auto w = problems::trapezoid_weights(problem.grid());
  CHECK(w.front() == doctest::Approx(problem.grid().h() / 2));
  CHECK(w[1] == doctest::Approx(problem.grid().h()));
}

TEST_CASE("normality: g = t^2 v is normal along example 1, g = t is abnormal") {
  const auto problem = oracle::example1(0.5, 400);
  const auto y = oracle::sample(problem.grid(), [](double t) { return oracle::example1_y(t, 0.5); });
  CHECK_FALSE(problems::normality_check(problem, y, 0).abnormal);
  using S = std::span<const double>;
  using O = std::span<double>;
  // g = t has vanishing partials, so it is abnormal along any trajectory
  auto g0 = oracle::field([](double t, S, S) { return t; }, [](double, S, S, O o) { o[0] = 0.0; },
                          [](double, S, S, O o) { o[0] = 0.0; });
  const auto trivial = problem.with_constraint(0, g0, 0.5);
  CHECK(problems::normality_check(trivial, y, 0).abnormal);
}

TEST_CASE("problem validation") {
  const auto problem = oracle::example1(0.5, 100);
  const auto wrong_end = oracle::sample(problem.grid(), [](double t) { return t; });
  CHECK_THROWS_AS(problems::require_admissible(problem, wrong_end), PreconditionError);
  const auto other_grid = oracle::sample(Grid(0.0, 1.0, 50), [](double t) { return oracle::example1_y(t, 0.5); });
  CHECK_THROWS_AS(problems::require_admissible(problem, other_grid), GridMismatch);
  const auto y = oracle::sample(problem.grid(), [](double t) { return oracle::example1_y(t, 0.5); });
  CHECK_THROWS_AS(problems::euler_lagrange_residual(problem, {{1.0, 2.0}}, y), DimensionMismatch);
  CHECK_THROWS_AS(problem.with_order(FracOrder(1.5)), UnsupportedOrder);
}
