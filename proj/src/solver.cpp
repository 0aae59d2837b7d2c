#include "fracnoether/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "fracnoether/errors.hpp"
#include "fracnoether/transcription.hpp"

namespace fracnoether::solver {

using problems::Multipliers;
using problems::VariationalProblem;
using transcription::Transcription;

namespace {

constexpr double kMinReciprocalCondition = 1e-14;
constexpr int kMaxHalvings = 30;
constexpr double kSparseDensity = 0.05;

double sup_norm(const std::vector<double>& r) {
  double s = 0.0;
  for (double x : r) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    s = std::max(s, std::abs(x));
  }
  return s;
}

Eigen::MatrixXd fd_jacobian(const Transcription& tr, const std::vector<double>& x, const std::vector<double>& r,
                            double step) {
  const auto size = static_cast<std::int64_t>(x.size());
  Eigen::MatrixXd jac(size, size);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t c = 0; c < size; ++c) {
    try {
      std::vector<double> shifted = x;
      const double dx = step * (1.0 + std::abs(x[c]));
      shifted[c] += dx;
      const std::vector<double> rc = tr.residual(shifted);
      for (std::int64_t i = 0; i < size; ++i) jac(i, c) = (rc[i] - r[i]) / dx;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return jac;
}

Eigen::VectorXd newton_step(const Eigen::MatrixXd& jac, const std::vector<double>& r) {
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
  const auto nonzeros = (jac.array() != 0.0).count();
  if (static_cast<double>(nonzeros) < kSparseDensity * static_cast<double>(jac.size())) {
    const Eigen::SparseMatrix<double> sparse = jac.sparseView();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(sparse);
    if (lu.info() != Eigen::Success) {
      throw SingularJacobian("Newton Jacobian is singular (sparse LU failed); try a positive regularization");
    }
    Eigen::VectorXd dx = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !dx.allFinite()) {
      throw SingularJacobian("Newton step is not finite; try a positive regularization");
    }
    return dx;
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
  const double rcond = lu.rcond();
  if (!(rcond >= kMinReciprocalCondition)) {
    throw SingularJacobian("Newton Jacobian is numerically singular (rcond = " + std::to_string(rcond) +
                           "); try a positive regularization");
  }
  return lu.solve(rhs);
}

Solution assemble(const Transcription& tr, const std::vector<double>& x, const std::vector<double>& r,
                  double tolerance, int iterations) {
  const VariationalProblem& problem = tr.problem();
  const Grid& grid = problem.grid();
  const std::size_t n = problem.dim();
  const std::size_t m = grid.m();

  SampledFunction el(grid, n);
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t c = 0; c < n; ++c) el(i, c) = r[(i - 1) * n + c];
  }
  Solution sol{tr.trajectory(x), tr.multipliers(x), make_report(std::move(el), 0), {}, {}, false, iterations, {}};
  sol.constraint_residual.assign(r.begin() + static_cast<std::ptrdiff_t>((m - 1) * n), r.end());
  for (std::size_t c = 0; c < n; ++c) {
    sol.boundary_residual.push_back(sol.q(0, c) - problem.boundary_a()[c]);
    sol.boundary_residual.push_back(sol.q(m, c) - problem.boundary_b()[c]);
  }
  sol.converged = sol.residual_norm() <= tolerance;
  return sol;
}

Solution newton(const VariationalProblem& problem, const SolverConfig& config, std::vector<double> x,
                int& iterations) {
  const Transcription tr(problem);
  std::vector<double> r = tr.residual(x);
  double norm = sup_norm(r);
  int local = 0;
  while (norm > config.newton_tolerance && local < config.max_iterations) {
    Eigen::MatrixXd jac = fd_jacobian(tr, x, r, config.fd_step);
    if (config.regularization > 0.0) jac.diagonal().array() += config.regularization;
    const Eigen::VectorXd dx = newton_step(jac, r);
    ++local;

    bool accepted = false;
    double scale = 1.0;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, scale *= 0.5) {
      std::vector<double> trial = x;
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += scale * dx[static_cast<Eigen::Index>(i)];
      std::vector<double> rt = tr.residual(trial);
      const double trial_norm = sup_norm(rt);
      if (trial_norm < norm) {
        x = std::move(trial);
        r = std::move(rt);
        norm = trial_norm;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  iterations += local;
  return assemble(tr, x, r, config.newton_tolerance, iterations);
}

std::vector<double> cold_start(const Transcription& tr) {
  const VariationalProblem& problem = tr.problem();
  const Grid& grid = problem.grid();
  SampledFunction q(grid, problem.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = (grid.node(i) - grid.a()) / (grid.b() - grid.a());
    for (std::size_t c = 0; c < problem.dim(); ++c) {
      q(i, c) = (1.0 - s) * problem.boundary_a()[c] + s * problem.boundary_b()[c];
    }
  }
  return tr.pack(q, Multipliers{std::vector<double>(problem.k(), 0.0)});
}

void flag_abnormal(const VariationalProblem& problem, Solution& sol) {
  if (!sol.converged || problem.k() == 0) return;
  for (std::size_t j = 0; j < problem.k(); ++j) {
    if (!problems::normality_check(problem, sol.q, j).abnormal) return;
  }
  sol.warnings.emplace_back("every constraint is abnormal at the solution; the multiplier rule may degenerate");
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iterations < 1) throw PreconditionError("max_iterations must be at least 1");
  if (!(newton_tolerance > 0.0)) throw PreconditionError("newton_tolerance must be positive");
  if (!(fd_step > 0.0)) throw PreconditionError("fd_step must be positive");
  if (continuation_steps < 0) throw PreconditionError("continuation_steps must be nonnegative");
  if (!(regularization >= 0.0)) throw PreconditionError("regularization must be nonnegative");
}

double Solution::residual_norm() const {
  double s = el.sup_norm;
  if (std::isnan(s)) return s;
  for (double x : constraint_residual) s = std::isfinite(x) ? std::max(s, std::abs(x)) : std::numeric_limits<double>::infinity();
  for (double x : boundary_residual) s = std::max(s, std::abs(x));
  return s;
}

Solution solve(const VariationalProblem& problem, const SolverConfig& config,
               const std::optional<Solution>& initial_guess) {
  config.validate();
  const Transcription target(problem);
  std::vector<double> x = initial_guess ? target.pack(initial_guess->q, initial_guess->lambda) : cold_start(target);

  int iterations = 0;
  const double alpha = problem.order().alpha();
  if (config.continuation_steps > 0 && alpha < 1.0) {
    for (int s = 0; s < config.continuation_steps; ++s) {
      const double stage = 1.0 - (1.0 - alpha) * static_cast<double>(s) / config.continuation_steps;
      const VariationalProblem staged = problem.with_order(FracOrder(stage));
      const Solution partial = newton(staged, config, x, iterations);
      x = target.pack(partial.q, partial.lambda);
    }
  }
  Solution sol = newton(problem, config, std::move(x), iterations);
  flag_abnormal(problem, sol);
  return sol;
}

SampledFunction interpolate(const SampledFunction& q, const Grid& target) {
  const Grid& source = q.grid();
  if (source.a() != target.a() || source.b() != target.b()) {
    throw GridMismatch("interpolation needs grids over the same interval");
  }
  SampledFunction out(target, q.dim());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double t = target.node(i);
    const double pos = (t - source.a()) / source.h();
    const std::size_t k = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(pos))), source.m() - 1);
    const double s = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
    for (std::size_t c = 0; c < q.dim(); ++c) out(i, c) = (1.0 - s) * q(k, c) + s * q(k + 1, c);
  }
  return out;
}

Refinement refine(const VariationalProblem& problem, const Solution& solution, std::size_t factor,
                  const SolverConfig& config) {
  if (!solution.converged) throw PreconditionError("refine needs a converged solution");
  if (factor < 2) throw PreconditionError("refinement factor must be at least 2");
  if (!(solution.q.grid() == problem.grid())) throw GridMismatch("solution is not on the problem grid");
  const Grid& coarse = problem.grid();
  const Grid fine(coarse.a(), coarse.b(), coarse.m() * factor);
  const VariationalProblem fine_problem = problem.with_grid(fine);

  Solution guess = solution;
  guess.q = interpolate(solution.q, fine);
  Refinement out{solve(fine_problem, config, guess), 0.0, 0.0, 0.0};
  out.coarse_el_norm = problems::euler_lagrange_residual(problem, solution.lambda, solution.q).sup_norm;
  out.fine_el_norm =
      problems::euler_lagrange_residual(fine_problem, out.solution.lambda, out.solution.q).sup_norm;
  out.empirical_order = out.coarse_el_norm > 0.0 && out.fine_el_norm > 0.0
                            ? std::log(out.coarse_el_norm / out.fine_el_norm) / std::log(static_cast<double>(factor))
                            : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace fracnoether::solver
