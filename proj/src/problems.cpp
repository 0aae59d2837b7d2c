#include "fracnoether/problems.hpp"

#include <cmath>
#include <string>

#include "fracnoether/errors.hpp"
#include "fracnoether/frac_ops.hpp"

namespace fracnoether::problems {

VariationalProblem::VariationalProblem(FracOrder order, ScalarField3 lagrangian,
                                       std::vector<ScalarField3> constraints,
                                       std::vector<double> constraint_levels, std::vector<double> boundary_a,
                                       std::vector<double> boundary_b, Grid grid)
    : order_(order),
      lagrangian_(std::move(lagrangian)),
      constraints_(std::move(constraints)),
      levels_(std::move(constraint_levels)),
      boundary_a_(std::move(boundary_a)),
      boundary_b_(std::move(boundary_b)),
      grid_(grid) {
  if (!lagrangian_) throw PreconditionError("variational problem needs a Lagrangian");
  if (levels_.size() != constraints_.size()) {
    throw DimensionMismatch("got " + std::to_string(constraints_.size()) + " constraints but " +
                            std::to_string(levels_.size()) + " levels");
  }
  if (boundary_a_.empty() || boundary_a_.size() != boundary_b_.size()) {
    throw DimensionMismatch("boundary values at a and b must have the same nonzero dimension");
  }
  if (order_.alpha() > 1.0) throw UnsupportedOrder("variational problems need 0 < alpha <= 1");
}

VariationalProblem VariationalProblem::with_grid(Grid grid) const {
  VariationalProblem p = *this;
  p.grid_ = grid;
  return p;
}

VariationalProblem VariationalProblem::with_order(FracOrder order) const {
  return VariationalProblem(order, lagrangian_, constraints_, levels_, boundary_a_, boundary_b_, grid_);
}

VariationalProblem VariationalProblem::with_lagrangian(ScalarField3 lagrangian) const {
  return VariationalProblem(order_, std::move(lagrangian), constraints_, levels_, boundary_a_, boundary_b_, grid_);
}

VariationalProblem VariationalProblem::with_constraint(std::size_t j, ScalarField3 g, double level) const {
  if (j >= k()) throw PreconditionError("constraint index out of range");
  VariationalProblem p = *this;
  p.constraints_[j] = std::move(g);
  p.levels_[j] = level;
  return p;
}

SampledFunction frac_velocity(const SampledFunction& q, FracOrder order) { return left_rl_derivative(q, order); }

ScalarField3 augmented_lagrangian(const VariationalProblem& problem, const Multipliers& mult) {
  if (mult.lambda.size() != problem.k()) {
    throw DimensionMismatch("expected " + std::to_string(problem.k()) + " multipliers, got " +
                            std::to_string(mult.lambda.size()));
  }
  std::vector<std::pair<double, ScalarField3>> terms;
  terms.emplace_back(1.0, problem.lagrangian());
  for (std::size_t j = 0; j < problem.k(); ++j) terms.emplace_back(-mult.lambda[j], problem.constraints()[j]);
  return ScalarField3::linear_combination(std::move(terms));
}

TrajectoryFields evaluate_along(const ScalarField3& integrand, const SampledFunction& q, FracOrder order) {
  const Grid& grid = q.grid();
  const std::size_t n = q.dim();
  SampledFunction v = fill_singular_endpoints(frac_velocity(q, order));
  SampledFunction value(grid, 1);
  SampledFunction gq(grid, n);
  SampledFunction gv(grid, n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.node(i);
    value(i) = integrand(t, q.at(i), v.at(i));
    integrand.grad_q(t, q.at(i), v.at(i), gq.at(i));
    integrand.grad_v(t, q.at(i), v.at(i), gv.at(i));
  }
  return {std::move(v), std::move(value), std::move(gq), std::move(gv)};
}

std::vector<double> trapezoid_weights(const Grid& grid) {
  std::vector<double> w(grid.size(), grid.h());
  w.front() = 0.5 * grid.h();
  w.back() = 0.5 * grid.h();
  return w;
}

void require_admissible(const VariationalProblem& problem, const SampledFunction& q) {
  if (!(q.grid() == problem.grid())) throw GridMismatch("trajectory is not sampled on the problem grid");
  if (q.dim() != problem.dim()) throw DimensionMismatch("trajectory dimension differs from the problem");
  const std::size_t m = q.grid().m();
  for (std::size_t c = 0; c < q.dim(); ++c) {
    const double da = std::abs(q(0, c) - problem.boundary_a()[c]);
    const double db = std::abs(q(m, c) - problem.boundary_b()[c]);
    if (da > 1e-8 * (1.0 + std::abs(problem.boundary_a()[c])) ||
        db > 1e-8 * (1.0 + std::abs(problem.boundary_b()[c]))) {
      throw PreconditionError("trajectory violates the boundary conditions in component " + std::to_string(c));
    }
  }
}

namespace {

double integrate(const ScalarField3& integrand, const SampledFunction& q, const SampledFunction& v) {
  const Grid& grid = q.grid();
  const std::vector<double> w = trapezoid_weights(grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sum += w[i] * integrand(grid.node(i), q.at(i), v.at(i));
  return sum;
}

}  // namespace

std::vector<double> constraint_values(const VariationalProblem& problem, const SampledFunction& q) {
  require_admissible(problem, q);
  const SampledFunction v = fill_singular_endpoints(frac_velocity(q, problem.order()));
  std::vector<double> out;
  out.reserve(problem.k());
  for (const ScalarField3& g : problem.constraints()) out.push_back(integrate(g, q, v));
  return out;
}

double objective_value(const VariationalProblem& problem, const SampledFunction& q) {
  require_admissible(problem, q);
  const SampledFunction v = fill_singular_endpoints(frac_velocity(q, problem.order()));
  return integrate(problem.lagrangian(), q, v);
}

namespace {

// d_2 f + tD_b^alpha d_3 f along q.
SampledFunction el_operator(const ScalarField3& integrand, const SampledFunction& q, FracOrder order) {
  TrajectoryFields fields = evaluate_along(integrand, q, order);
  return fields.grad_q + right_rl_derivative(fields.grad_v, order);
}

}  // namespace

ResidualReport euler_lagrange_residual(const VariationalProblem& problem, const Multipliers& mult,
                                       const SampledFunction& q, std::size_t band) {
  require_admissible(problem, q);
  return make_report(el_operator(augmented_lagrangian(problem, mult), q, problem.order()), band);
}

NormalityResult normality_check(const VariationalProblem& problem, const SampledFunction& q, std::size_t j,
                                std::optional<double> tolerance, std::size_t band) {
  if (j >= problem.k()) throw PreconditionError("normality_check: constraint index out of range");
  require_admissible(problem, q);
  ResidualReport report = make_report(el_operator(problem.constraints()[j], q, problem.order()), band);
  const double tol = tolerance.value_or(certification_tolerance(problem.grid(), problem.order()));
  const bool abnormal = report.sup_norm < tol;
  return {std::move(report), abnormal};
}

}  // namespace fracnoether::problems
