#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <optional>

#include "command_support.hpp"
#include "fracnoether/frac_ops.hpp"
#include "fracnoether/gamma.hpp"
#include "fracnoether/hamiltonian.hpp"
#include "fracnoether/problems.hpp"
#include "fracnoether/solver.hpp"

namespace fracnoether::cli::detail {
namespace {

constexpr double kAlpha = 0.5;

OracleResult judge(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured <= tolerance};
}

// Max relative error of `numeric` against `exact` over nodes with t >= t_min.
template <class Exact>
double max_relative_error(const SampledFunction& numeric, Exact&& exact, double t_min) {
  double worst = 0.0;
  const Grid& grid = numeric.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.node(i);
    if (t < t_min) continue;
    const double e = exact(t);
    worst = std::max(worst, std::abs(numeric(i) - e) / std::abs(e));
  }
  return worst;
}

ScalarField3 field(ScalarField3::Value value, ScalarField3::Gradient gq, ScalarField3::Gradient gv) {
  return ScalarField3(std::move(value), std::move(gq), std::move(gv));
}

problems::VariationalProblem example1(double alpha, std::size_t m) {
  ScalarField3 lagrangian = field(
      [](double t, std::span<const double>, std::span<const double> v) { return std::pow(t, 4) + v[0] * v[0]; },
      [](double, std::span<const double>, std::span<const double>, std::span<double> out) { out[0] = 0.0; },
      [](double, std::span<const double>, std::span<const double> v, std::span<double> out) { out[0] = 2.0 * v[0]; });
  ScalarField3 g = field(
      [](double t, std::span<const double>, std::span<const double> v) { return t * t * v[0]; },
      [](double, std::span<const double>, std::span<const double>, std::span<double> out) { out[0] = 0.0; },
      [](double t, std::span<const double>, std::span<const double>, std::span<double> out) { out[0] = t * t; });
  const double psi = 2.0 / std::tgamma(alpha + 3.0);
  return problems::VariationalProblem(FracOrder(alpha), std::move(lagrangian), {std::move(g)}, {0.2}, {0.0}, {psi},
                                      Grid(0.0, 1.0, m));
}

SampledFunction example1_extremal(const Grid& grid, double alpha) {
  return SampledFunction::from_function(
      grid, [alpha](double t) { return 2.0 * std::pow(t, alpha + 2.0) / std::tgamma(alpha + 3.0); });
}

double interior_sup(const SampledFunction& f, std::size_t band) {
  double worst = 0.0;
  for (std::size_t i = band; i + band < f.size(); ++i) {
    for (std::size_t c = 0; c < f.dim(); ++c) worst = std::max(worst, std::abs(f(i, c)));
  }
  return worst;
}

hamiltonian::ControlProblem autonomous_control(double constant, std::size_t m) {
  auto zero_grad = [](double, std::span<const double>, std::span<const double>, std::span<double> out) {
    out[0] = 0.0;
  };
  auto unit_grad = [](double, std::span<const double>, std::span<const double>, std::span<double> out) {
    out[0] = 1.0;
  };
  ScalarField3 lagrangian = field(
      [constant](double, std::span<const double>, std::span<const double> u) { return u[0] * u[0] + constant; },
      zero_grad,
      [](double, std::span<const double>, std::span<const double> u, std::span<double> out) { out[0] = 2.0 * u[0]; });
  ScalarField3 phi = field([](double, std::span<const double>, std::span<const double> u) { return u[0]; },
                           zero_grad, unit_grad);
  ScalarField3 g = field([](double, std::span<const double>, std::span<const double> u) { return u[0]; },
                         zero_grad, unit_grad);
  return hamiltonian::ControlProblem(FracOrder(kAlpha), std::move(lagrangian), {std::move(phi)}, {std::move(g)},
                                     {1.0}, {0.0}, 1, Grid(0.0, 1.0, m));
}

// (q, u, p) = (t^alpha / Gamma(1 + alpha), 1, 0) with lambda = 2.
hamiltonian::PontryaginExtremal autonomous_extremal(const Grid& grid) {
  return {SampledFunction::from_function(grid,
                                         [](double t) { return std::pow(t, kAlpha) / std::tgamma(1.0 + kAlpha); }),
          SampledFunction::from_function(grid, [](double) { return 1.0; }),
          SampledFunction::from_function(grid, [](double) { return 0.0; }), {{2.0}}};
}

std::vector<OracleResult> oracles() {
  std::vector<OracleResult> out;
  out.push_back(judge("gamma(1/2) = sqrt(pi)",
                      std::abs(fracnoether::gamma(0.5) - std::sqrt(std::numbers::pi)) / std::sqrt(std::numbers::pi),
                      1e-12));
  out.push_back(judge("gamma(5) = 24", std::abs(fracnoether::gamma(5.0) - 24.0) / 24.0, 1e-12));

  const Grid grid(0.0, 1.0, 2000);
  const FracOrder order(kAlpha);
  const auto t2 = SampledFunction::from_function(grid, [](double t) { return t * t; });
  out.push_back(judge("power rule D^0.5 t^2",
                      max_relative_error(left_rl_derivative(t2, order),
                                         [](double t) { return 2.0 * std::pow(t, 1.5) / std::tgamma(2.5); }, 0.05),
                      1e-3));
  const auto one = SampledFunction::from_function(grid, [](double) { return 1.0; });
  out.push_back(judge("constant rule D^0.5 1",
                      max_relative_error(left_rl_derivative(one, order),
                                         [](double t) { return std::pow(t, -0.5) / std::tgamma(0.5); }, 0.05),
                      1e-3));
  const auto t1 = SampledFunction::from_function(grid, [](double t) { return t; });
  out.push_back(judge("integral rule I^0.5 t",
                      max_relative_error(left_rl_integral(t1, order),
                                         [](double t) { return std::pow(t, 1.5) / std::tgamma(2.5); }, 0.05),
                      1e-3));

  {
    const auto problem = example1(kAlpha, 400);
    const SampledFunction y = example1_extremal(problem.grid(), kAlpha);
    const ResidualReport el = problems::euler_lagrange_residual(problem, {{2.0}}, y);
    out.push_back(judge("example 1 EL residual", el.sup_norm,
                        certification_tolerance(problem.grid(), problem.order())));
    out.push_back(judge("example 1 constraint = 1/5",
                        std::abs(problems::constraint_values(problem, y)[0] - 0.2), 1e-4));
  }
  {
    const auto problem = example1(kAlpha, 100);
    const solver::Solution sol = solver::solve(problem);
    const SampledFunction y = example1_extremal(problem.grid(), kAlpha);
    double dev = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      dev = std::max(dev, std::abs(sol.q(i) - y(i)));
      scale = std::max(scale, std::abs(y(i)));
    }
    out.push_back(judge("example 1 solve, lambda", sol.converged ? std::abs(sol.lambda.lambda[0] - 2.0) : std::numeric_limits<double>::infinity(),
                        0.1));
    out.push_back(judge("example 1 solve, trajectory", sol.converged ? dev / scale : std::numeric_limits<double>::infinity(), 1e-2));
  }
  {
    // L = v^2, int q = 1/6, zero boundary: q = t(1 - t), lambda = 4.
    ScalarField3 lagrangian = field(
        [](double, std::span<const double>, std::span<const double> v) { return v[0] * v[0]; },
        [](double, std::span<const double>, std::span<const double>, std::span<double> o) { o[0] = 0.0; },
        [](double, std::span<const double>, std::span<const double> v, std::span<double> o) { o[0] = 2.0 * v[0]; });
    ScalarField3 g = field(
        [](double, std::span<const double> q, std::span<const double>) { return q[0]; },
        [](double, std::span<const double>, std::span<const double>, std::span<double> o) { o[0] = 1.0; },
        [](double, std::span<const double>, std::span<const double>, std::span<double> o) { o[0] = 0.0; });
    const problems::VariationalProblem problem(FracOrder(1.0), std::move(lagrangian), {std::move(g)}, {1.0 / 6.0},
                                               {0.0}, {0.0}, Grid(0.0, 1.0, 200));
    const solver::Solution sol = solver::solve(problem);
    out.push_back(judge("classical limit, lambda = 4",
                        sol.converged ? std::abs(sol.lambda.lambda[0] - 4.0) : std::numeric_limits<double>::infinity(), 1e-3));
  }
  {
    const auto cp = autonomous_control(1.0, 400);
    const auto ext = autonomous_extremal(cp.grid());
    out.push_back(judge("autonomous law, H = 0",
                        hamiltonian::autonomous_energy_residual(cp, ext).sup_norm,
                        certification_tolerance(cp.grid(), cp.order())));
    const auto cp_bad = autonomous_control(0.0, 400);
    const SampledFunction h = hamiltonian::hamiltonian_along(cp_bad, ext);
    const double d_h = interior_sup(left_rl_derivative(h, cp_bad.order()), kDefaultBand);
    out.push_back({"D^alpha H nonzero for H = -1", d_h, 1e-1, d_h >= 1e-1});
  }
  return out;
}

}  // namespace

std::vector<OracleResult> run_oracles(bool corrupt_gamma) {
  if (!corrupt_gamma) return oracles();
  fracnoether::testing::ScopedGammaFault fault;
  return oracles();
}

}  // namespace fracnoether::cli::detail
