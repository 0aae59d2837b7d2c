#pragma once

// Randomized operator identities shared by the unit suite and the acceptance
// binary. Every property draws its probes from a fixed-seed generator.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "fracnoether/frac_ops.hpp"
#include "fracnoether/noether.hpp"
#include "oracles.hpp"

namespace properties {

using fracnoether::FracOrder;
using fracnoether::Grid;
using fracnoether::SampledFunction;

struct Outcome {
  std::string name;
  int probes = 0;
  int failures = 0;
  double worst = 0.0;  ///< largest normalized defect seen

  bool passed() const { return probes > 0 && failures == 0; }
  void record(double defect, double tolerance) {
    ++probes;
    worst = std::max(worst, std::isnan(defect) ? std::numeric_limits<double>::infinity() : defect);
    if (!(defect <= tolerance)) ++failures;
  }
};

constexpr int kProbes = 40;
constexpr double kMachineTolerance = 1e-12;

/// max |a - b| / (1 + max |b|) over all entries; NaN markers must coincide.
inline double relative_defect(const SampledFunction& a, const SampledFunction& b) {
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    const double x = a.values()[i];
    const double y = b.values()[i];
    if (std::isnan(x) || std::isnan(y)) {
      if (std::isnan(x) != std::isnan(y)) return std::numeric_limits<double>::infinity();
      continue;
    }
    diff = std::max(diff, std::abs(x - y));
    scale = std::max(scale, std::abs(y));
  }
  return diff / (1.0 + scale);
}

inline Grid random_grid(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> m(8, 300);
  std::uniform_real_distribution<double> a(-1.0, 1.0);
  std::uniform_real_distribution<double> len(0.2, 3.0);
  const double lo = a(rng);
  return Grid(lo, lo + len(rng), m(rng));
}

inline double random_alpha(std::mt19937_64& rng, bool allow_one) {
  std::uniform_real_distribution<double> d(0.05, 0.95);
  if (allow_one && std::uniform_int_distribution<int>(0, 4)(rng) == 0) return 1.0;
  return d(rng);
}

struct NamedOperator {
  std::string name;
  bool is_derivative;
  std::function<SampledFunction(const SampledFunction&, FracOrder)> apply;
};

inline std::vector<NamedOperator> operators() {
  using fracnoether::Scheme;
  return {
      {"left integral", false, [](const SampledFunction& f, FracOrder o) { return left_rl_integral(f, o); }},
      {"right integral", false, [](const SampledFunction& f, FracOrder o) { return right_rl_integral(f, o); }},
      {"left L1", true, [](const SampledFunction& f, FracOrder o) { return left_rl_derivative(f, o); }},
      {"right L1", true, [](const SampledFunction& f, FracOrder o) { return right_rl_derivative(f, o); }},
      {"left GL", true,
       [](const SampledFunction& f, FracOrder o) {
         return left_rl_derivative(f, o, {Scheme::kGrunwaldLetnikov});
       }},
      {"right GL", true,
       [](const SampledFunction& f, FracOrder o) {
         return right_rl_derivative(f, o, {Scheme::kGrunwaldLetnikov});
       }},
  };
}

/// Op(a f + b g) = a Op(f) + b Op(g) for every operator.
inline Outcome linearity(std::uint64_t seed = 101) {
  Outcome out{"linearity of fractional operators"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (const NamedOperator& op : operators()) {
    for (int p = 0; p < kProbes; ++p) {
      const Grid grid = random_grid(rng);
      const std::size_t dim = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      const FracOrder order(random_alpha(rng, op.is_derivative));
      const SampledFunction f = oracle::random_samples(rng, grid, dim);
      const SampledFunction g = oracle::random_samples(rng, grid, dim);
      const double a = coef(rng);
      const double b = coef(rng);
      out.record(relative_defect(op.apply(a * f + b * g, order), a * op.apply(f, order) + b * op.apply(g, order)),
                 kMachineTolerance);
    }
  }
  return out;
}

/// Right operators are left operators conjugated by reflection t -> a + b - t.
inline Outcome reflection_duality(std::uint64_t seed = 202) {
  Outcome out{"reflection duality"};
  std::mt19937_64 rng(seed);
  const auto ops = operators();
  for (std::size_t k = 0; k < ops.size(); k += 2) {
    const NamedOperator& left = ops[k];
    const NamedOperator& right = ops[k + 1];
    for (int p = 0; p < kProbes; ++p) {
      const Grid grid = random_grid(rng);
      const FracOrder order(random_alpha(rng, left.is_derivative));
      const SampledFunction f = oracle::random_samples(rng, grid, 2);
      out.record(relative_defect(right.apply(f, order), fracnoether::reflect(left.apply(fracnoether::reflect(f), order))),
                 kMachineTolerance);
    }
  }
  return out;
}

/// D^gamma(f, h) is linear in f and in h separately.
inline Outcome pair_bilinearity(std::uint64_t seed = 303) {
  Outcome out{"bilinearity of the pair operator"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int p = 0; p < 2 * kProbes; ++p) {
    const Grid grid = random_grid(rng);
    const std::size_t dim = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const FracOrder order(random_alpha(rng, true));
    const SampledFunction f1 = oracle::random_samples(rng, grid, dim);
    const SampledFunction f2 = oracle::random_samples(rng, grid, dim);
    const SampledFunction h = oracle::random_samples(rng, grid, dim);
    const double a = coef(rng);
    const double b = coef(rng);
    using fracnoether::noether::frac_pair_operator;
    out.record(relative_defect(frac_pair_operator(a * f1 + b * f2, h, order),
                               a * frac_pair_operator(f1, h, order) + b * frac_pair_operator(f2, h, order)),
               kMachineTolerance);
    out.record(relative_defect(frac_pair_operator(h, a * f1 + b * f2, order),
                               a * frac_pair_operator(h, f1, order) + b * frac_pair_operator(h, f2, order)),
               kMachineTolerance);
  }
  return out;
}

/// At gamma = 1 the pair operator is the derivative of the product, up to the
/// O(h^2) defect of central differences.
inline Outcome unit_order_product_rule(std::uint64_t seed = 404) {
  Outcome out{"product rule at gamma = 1"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> msize(400, 2000);
  for (int p = 0; p < kProbes; ++p) {
    const Grid grid(0.0, 1.0, msize(rng));
    const auto fs = oracle::random_power_sum(rng, -0.5);
    const auto hs = oracle::random_power_sum(rng, -0.5);
    const SampledFunction f = oracle::sample(grid, fs);
    const SampledFunction h = oracle::sample(grid, hs);
    const SampledFunction pair = fracnoether::noether::frac_pair_operator(f, h, FracOrder(1.0));
    const SampledFunction exact =
        oracle::sample(grid, [&](double t) {
          double d = 0.0;
          for (std::size_t k = 0; k < fs.coefficients.size(); ++k) {
            d += fs.coefficients[k] * fs.exponents[k] * std::pow(t + 0.5, fs.exponents[k] - 1.0) * hs(t);
            d += hs.coefficients[k] * hs.exponents[k] * std::pow(t + 0.5, hs.exponents[k] - 1.0) * fs(t);
          }
          return d;
        });
    const double defect = oracle::interior_sup_diff(pair, exact, 1);
    out.record(defect / (grid.h() * grid.h()), 200.0);
  }
  return out;
}

/// With tau = 0 the Noether residual coincides with the momentum residual.
inline Outcome time_free_reduction(std::uint64_t seed = 505) {
  Outcome out{"tau = 0 reduction of the Noether law"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  using S = std::span<const double>;
  using O = std::span<double>;
  for (int p = 0; p < kProbes; ++p) {
    const Grid grid(0.0, 1.0, std::uniform_int_distribution<std::size_t>(20, 300)(rng));
    const double c1 = coef(rng), c2 = coef(rng), c3 = coef(rng), lam = coef(rng);
    const double alpha = random_alpha(rng, true);
    // L = c1 v^2 + c2 t v q + c3 q^2, g = q v
    auto lagrangian = oracle::field(
        [=](double t, S q, S v) { return c1 * v[0] * v[0] + c2 * t * v[0] * q[0] + c3 * q[0] * q[0]; },
        [=](double t, S q, S v, O o) { o[0] = c2 * t * v[0] + 2.0 * c3 * q[0]; },
        [=](double t, S q, S v, O o) { o[0] = 2.0 * c1 * v[0] + c2 * t * q[0]; });
    auto g = oracle::field([](double, S q, S v) { return q[0] * v[0]; }, [](double, S, S v, O o) { o[0] = v[0]; },
                           [](double, S q, S, O o) { o[0] = q[0]; });
    const auto qs = oracle::random_power_sum(rng, 0.0);
    const double qa = qs(0.0), qb = qs(1.0);
    const fracnoether::problems::VariationalProblem problem(FracOrder(alpha), lagrangian, {g}, {0.0}, {qa}, {qb},
                                                            grid);
    const SampledFunction q = oracle::sample(grid, qs);
    const auto gen = fracnoether::noether::SymmetryGenerator::constant(0.0, {coef(rng)});
    const auto noether = fracnoether::noether::noether_law_residual(problem, {{lam}}, q, gen, 1);
    const auto momentum = fracnoether::noether::momentum_law_residual(problem, {{lam}}, q, gen, 1);
    out.record(relative_defect(noether.components, momentum.components), kMachineTolerance);
  }
  return out;
}

inline std::vector<Outcome> all() {
  return {linearity(), pair_bilinearity(), unit_order_product_rule(), reflection_duality(), time_free_reduction()};
}

}  // namespace properties
