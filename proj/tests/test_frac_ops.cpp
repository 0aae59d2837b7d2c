#include <doctest.h>

#include <cmath>

#include "fracnoether/errors.hpp"
#include "fracnoether/frac_ops.hpp"
#include "oracles.hpp"

using namespace fracnoether;

namespace {

double observed_order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

double power_rule_error(std::size_t m, double p, double alpha, Scheme scheme) {
  const Grid grid(0.0, 1.0, m);
  const auto f = oracle::sample(grid, [p](double t) { return std::pow(t, p); });
  const auto d = left_rl_derivative(f, FracOrder(alpha), {scheme, Execution::kSerial});
  return oracle::max_relative_error(d, [&](double t) { return oracle::power_derivative(p, alpha, t); }, 0.05);
}

}  // namespace

TEST_CASE("power rule and L1 convergence order 2 - alpha") {
  for (double alpha : {0.3, 0.5, 0.8}) {
    const double e1 = power_rule_error(500, 2.0, alpha, Scheme::kL1);
    const double e2 = power_rule_error(1000, 2.0, alpha, Scheme::kL1);
    CHECK(e2 < 1e-2);
    CHECK(observed_order(e1, e2) == doctest::Approx(2.0 - alpha).epsilon(0.08));
  }
}

TEST_CASE("Grunwald-Letnikov cross-check converges at first order") {
  const double e1 = power_rule_error(500, 2.0, 0.5, Scheme::kGrunwaldLetnikov);
  const double e2 = power_rule_error(1000, 2.0, 0.5, Scheme::kGrunwaldLetnikov);
  CHECK(observed_order(e1, e2) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("constant rule: the derivative of a constant is not zero") {
  const Grid grid(0.0, 1.0, 400);
  const auto one = oracle::sample(grid, [](double) { return 1.0; });
  const auto d = left_rl_derivative(one, FracOrder(0.4));
  CHECK(oracle::max_relative_error(d, [](double t) { return std::pow(t, -0.4) / std::tgamma(0.6); }, 0.0) < 1e-12);
}

TEST_CASE("fractional integral of powers") {
  const Grid grid(0.0, 1.0, 800);
  for (double p : {0.0, 1.0, 2.5}) {
    const auto f = oracle::sample(grid, [p](double t) { return std::pow(t, p); });
    const auto i = left_rl_integral(f, FracOrder(0.5));
    CHECK(oracle::max_relative_error(i, [p](double t) { return oracle::power_integral(p, 0.5, t); }, 0.05) < 1e-3);
  }
}

TEST_CASE("right derivative of (b - t)^p") {
  const Grid grid(0.0, 1.0, 1000);
  const auto f = oracle::sample(grid, [](double t) { return std::pow(1.0 - t, 2.0); });
  const auto d = right_rl_derivative(f, FracOrder(0.5));
  CHECK(oracle::max_relative_error(d, [](double t) { return oracle::power_derivative(2.0, 0.5, 1.0 - t); }, 0.0,
                                   0.95) < 1e-3);
}

TEST_CASE("closed-form atoms agree with the oracle") {
  const auto atom = ClosedFormAtom::power(3.0, 1.5, 0.0);
  CHECK(closed_form_left_derivative(atom, FracOrder(0.5), 0.7) ==
        doctest::Approx(3.0 * oracle::power_derivative(1.5, 0.5, 0.7)));
  CHECK(closed_form_left_integral(atom, FracOrder(0.5), 0.7) ==
        doctest::Approx(3.0 * oracle::power_integral(1.5, 0.5, 0.7)));
  const auto right = ClosedFormAtom::power(1.0, 2.0, 1.0);
  CHECK(closed_form_right_derivative(right, FracOrder(0.5), 0.2) ==
        doctest::Approx(oracle::power_derivative(2.0, 0.5, 0.8)));
  CHECK_THROWS_AS(ClosedFormAtom::power(1.0, -1.0, 0.0), PreconditionError);
}

TEST_CASE("order one falls back to classical differences") {
  const Grid grid(0.0, 1.0, 100);
  const auto f = oracle::sample(grid, [](double t) { return t * t; });
  const auto left = left_rl_derivative(f, FracOrder(1.0));
  const auto right = right_rl_derivative(f, FracOrder(1.0));
  for (std::size_t i = 1; i < 100; ++i) {
    CHECK(left(i) == doctest::Approx(2.0 * grid.node(i)).epsilon(1e-10));
    CHECK(right(i) == doctest::Approx(-2.0 * grid.node(i)).epsilon(1e-10));
  }
}

TEST_CASE("unsupported orders are rejected") {
  const Grid grid(0.0, 1.0, 10);
  const SampledFunction f(grid, 1);
  CHECK_THROWS_AS(left_rl_derivative(f, FracOrder(1.5)), UnsupportedOrder);
  CHECK_THROWS_AS(right_rl_derivative(f, FracOrder(2.0)), UnsupportedOrder);
}
