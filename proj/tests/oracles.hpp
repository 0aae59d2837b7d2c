#pragma once

// Closed-form reference values computed independently of the library
// (std::tgamma, direct formulas). Shared by unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "fracnoether/fields.hpp"
#include "fracnoether/grid.hpp"
#include "fracnoether/problems.hpp"

namespace oracle {

/// Left RL derivative of (t - a)^p: Gamma(p + 1) / Gamma(p + 1 - alpha) (t - a)^(p - alpha).
inline double power_derivative(double p, double alpha, double t, double a = 0.0) {
  return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - alpha) * std::pow(t - a, p - alpha);
}

/// Left RL integral of (t - a)^p.
inline double power_integral(double p, double alpha, double t, double a = 0.0) {
  return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 + alpha) * std::pow(t - a, p + alpha);
}

inline double example1_y(double t, double alpha) {
  return 2.0 * std::pow(t, alpha + 2.0) / std::tgamma(alpha + 3.0);
}

inline fracnoether::SampledFunction sample(const fracnoether::Grid& grid, auto fn) {
  return fracnoether::SampledFunction::from_function(grid, fn);
}

/// Max |f - g| over nodes band..m-band, ignoring NaN markers outside that range.
inline double interior_sup_diff(const fracnoether::SampledFunction& f, const fracnoether::SampledFunction& g,
                                std::size_t band) {
  double worst = 0.0;
  for (std::size_t i = band; i + band < f.size(); ++i) {
    for (std::size_t c = 0; c < f.dim(); ++c) worst = std::max(worst, std::abs(f(i, c) - g(i, c)));
  }
  return worst;
}

/// Max relative error against exact(t) over nodes with t >= t_min, excluding NaN-marked nodes.
template <class Exact>
double max_relative_error(const fracnoether::SampledFunction& numeric, Exact&& exact, double t_min,
                          double t_max = std::numeric_limits<double>::infinity()) {
  double worst = 0.0;
  const fracnoether::Grid& grid = numeric.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.node(i);
    if (t < t_min || t > t_max || std::isnan(numeric(i))) continue;
    const double e = exact(t);
    worst = std::max(worst, std::abs(numeric(i) - e) / std::abs(e));
  }
  return worst;
}

/// Random smooth function sum_k c_k (t - a)^(p_k) with p_k >= 1, c_k in [-1, 1].
struct RandomPowerSum {
  std::vector<double> coefficients;
  std::vector<double> exponents;
  double a = 0.0;

  double operator()(double t) const {
    double s = 0.0;
    for (std::size_t k = 0; k < coefficients.size(); ++k) s += coefficients[k] * std::pow(t - a, exponents[k]);
    return s;
  }
};

inline RandomPowerSum random_power_sum(std::mt19937_64& rng, double a = 0.0) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> expo(1.0, 4.0);
  RandomPowerSum f;
  f.a = a;
  for (int k = 0; k < 3; ++k) {
    f.coefficients.push_back(coef(rng));
    f.exponents.push_back(expo(rng));
  }
  return f;
}

inline fracnoether::SampledFunction random_samples(std::mt19937_64& rng, const fracnoether::Grid& grid,
                                                   std::size_t dim) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(grid.size() * dim);
  for (double& x : v) x = d(rng);
  return fracnoether::SampledFunction(grid, dim, std::move(v));
}

inline fracnoether::ScalarField3 field(fracnoether::ScalarField3::Value value,
                                       fracnoether::ScalarField3::Gradient gq,
                                       fracnoether::ScalarField3::Gradient gv) {
  return fracnoether::ScalarField3(std::move(value), std::move(gq), std::move(gv));
}

/// L = t^4 + v^2, g = t^2 v, l = 1/5, q(0) = 0, q(1) = 2 / Gamma(alpha + 3).
inline fracnoether::problems::VariationalProblem example1(double alpha, std::size_t m) {
  using S = std::span<const double>;
  using O = std::span<double>;
  auto lagrangian = field([](double t, S, S v) { return std::pow(t, 4) + v[0] * v[0]; },
                          [](double, S, S, O o) { o[0] = 0.0; }, [](double, S, S v, O o) { o[0] = 2.0 * v[0]; });
  auto g = field([](double t, S, S v) { return t * t * v[0]; }, [](double, S, S, O o) { o[0] = 0.0; },
                 [](double t, S, S, O o) { o[0] = t * t; });
  return fracnoether::problems::VariationalProblem(fracnoether::FracOrder(alpha), lagrangian, {g}, {0.2}, {0.0},
                                                   {2.0 / std::tgamma(alpha + 3.0)},
                                                   fracnoether::Grid(0.0, 1.0, m));
}

/// L = v^2, g = q, l, zero boundary values on [0, 1]: q = 6 l t (1 - t), lambda = 24 l.
inline fracnoether::problems::VariationalProblem classical_benchmark(double alpha, double level, std::size_t m) {
  using S = std::span<const double>;
  using O = std::span<double>;
  auto lagrangian = field([](double, S, S v) { return v[0] * v[0]; }, [](double, S, S, O o) { o[0] = 0.0; },
                          [](double, S, S v, O o) { o[0] = 2.0 * v[0]; });
  auto g = field([](double, S q, S) { return q[0]; }, [](double, S, S, O o) { o[0] = 1.0; },
                 [](double, S, S, O o) { o[0] = 0.0; });
  return fracnoether::problems::VariationalProblem(fracnoether::FracOrder(alpha), lagrangian, {g}, {level}, {0.0},
                                                   {0.0}, fracnoether::Grid(0.0, 1.0, m));
}

}  // namespace oracle
