#include "fracnoether/noether.hpp"

#include <cmath>
#include <string>

#include "fracnoether/errors.hpp"
#include "fracnoether/frac_ops.hpp"
#include "fracnoether/kernels.hpp"

namespace fracnoether::noether {

using problems::Multipliers;
using problems::VariationalProblem;

SymmetryGenerator SymmetryGenerator::zero() {
  return {[](double, std::span<const double>) { return 0.0; },
          [](double, std::span<const double>, std::span<double> out) {
            for (double& x : out) x = 0.0;
          }};
}

SymmetryGenerator SymmetryGenerator::constant(double c_tau, std::vector<double> c_xi) {
  return {[c_tau](double, std::span<const double>) { return c_tau; },
          [c_xi = std::move(c_xi)](double, std::span<const double>, std::span<double> out) {
            if (out.size() != c_xi.size()) throw DimensionMismatch("constant generator has wrong dimension");
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = c_xi[i];
          }};
}

SampledFunction sample_tau(const SymmetryGenerator& gen, const SampledFunction& q) {
  SampledFunction tau(q.grid(), 1);
  for (std::size_t i = 0; i < q.size(); ++i) tau(i) = gen.tau(q.grid().node(i), q.at(i));
  return tau;
}

SampledFunction sample_xi(const SymmetryGenerator& gen, const SampledFunction& q) {
  SampledFunction xi(q.grid(), q.dim());
  for (std::size_t i = 0; i < q.size(); ++i) gen.xi(q.grid().node(i), q.at(i), xi.at(i));
  return xi;
}

SampledFunction frac_pair_operator(const SampledFunction& f, const SampledFunction& h, FracOrder order) {
  require_same_grid(f, h, "frac_pair_operator");
  if (f.dim() != h.dim()) throw DimensionMismatch("frac_pair_operator: dimension mismatch");
  const SampledFunction right_f = right_rl_derivative(f, order);
  const SampledFunction left_h = left_rl_derivative(h, order);
  SampledFunction out(f.grid(), 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double sum = 0.0;
    for (std::size_t c = 0; c < f.dim(); ++c) sum += -h(i, c) * right_f(i, c) + f(i, c) * left_h(i, c);
    out(i) = sum;
  }
  return out;
}

namespace {

void require_no_time_transformation(const SymmetryGenerator& gen, const SampledFunction& q) {
  const SampledFunction tau = sample_tau(gen, q);
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau(i) != 0.0) {
      throw PreconditionError("generator must have tau == 0 (nonzero at node " + std::to_string(i) + ")");
    }
  }
}

SampledFunction momentum_field(const problems::TrajectoryFields& fields, const SampledFunction& xi,
                               FracOrder order) {
  return frac_pair_operator(fields.grad_v, xi, order);
}

}  // namespace

ResidualReport invariance_necessary_condition(const VariationalProblem& problem, const Multipliers& mult,
                                              const SampledFunction& q, const SymmetryGenerator& gen,
                                              std::size_t band) {
  problems::require_admissible(problem, q);
  require_no_time_transformation(gen, q);
  const auto fields = problems::evaluate_along(problems::augmented_lagrangian(problem, mult), q, problem.order());
  const SampledFunction xi = sample_xi(gen, q);
  const SampledFunction left_xi = left_rl_derivative(xi, problem.order());
  SampledFunction r(q.grid(), 1);
  for (std::size_t i = 0; i < q.size(); ++i) {
    double sum = 0.0;
    for (std::size_t c = 0; c < q.dim(); ++c) sum += fields.grad_q(i, c) * xi(i, c) + fields.grad_v(i, c) * left_xi(i, c);
    r(i) = sum;
  }
  return make_report(std::move(r), band);
}

ResidualReport momentum_law_residual(const VariationalProblem& problem, const Multipliers& mult,
                                     const SampledFunction& q, const SymmetryGenerator& gen, std::size_t band) {
  problems::require_admissible(problem, q);
  require_no_time_transformation(gen, q);
  const auto fields = problems::evaluate_along(problems::augmented_lagrangian(problem, mult), q, problem.order());
  return make_report(momentum_field(fields, sample_xi(gen, q), problem.order()), band);
}

ResidualReport noether_law_residual(const VariationalProblem& problem, const Multipliers& mult,
                                    const SampledFunction& q, const SymmetryGenerator& gen, std::size_t band) {
  problems::require_admissible(problem, q);
  const FracOrder order = problem.order();
  const auto fields = problems::evaluate_along(problems::augmented_lagrangian(problem, mult), q, order);

  SampledFunction energy(q.grid(), 1);
  for (std::size_t i = 0; i < q.size(); ++i) {
    double dot = 0.0;
    for (std::size_t c = 0; c < q.dim(); ++c) dot += fields.grad_v(i, c) * fields.velocity(i, c);
    energy(i) = fields.value(i) - order.alpha() * dot;
  }
  SampledFunction r = frac_pair_operator(energy, sample_tau(gen, q), order);
  r += momentum_field(fields, sample_xi(gen, q), order);
  return make_report(std::move(r), band);
}

namespace {

SampledFunction velocity_on_nodes(std::span<const double> t, const std::vector<double>& values, std::size_t dim,
                                  const Grid& grid, FracOrder order) {
  const std::size_t size = t.size();
  const std::size_t m = size - 1;
  SampledFunction v(grid, dim);
  std::vector<double> column(size), out(size);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t i = 0; i < size; ++i) column[i] = values[i * dim + c];
    if (order.alpha() == 1.0) {
      out[0] = (column[1] - column[0]) / (t[1] - t[0]);
      for (std::size_t i = 1; i < m; ++i) out[i] = (column[i + 1] - column[i - 1]) / (t[i + 1] - t[i - 1]);
      out[m] = (column[m] - column[m - 1]) / (t[m] - t[m - 1]);
    } else {
      kernels::parallel::l1_left_nonuniform(t, column, order.alpha(), out);
      out[0] = out[1] + (out[1] - out[2]) * (t[0] - t[1]) / (t[1] - t[2]);
    }
    v.set_component(c, out);
  }
  return v;
}

// Cumulative int_{t'_0}^{t'_i} F dt' on the transformed trajectory.
std::vector<double> transformed_action(const ScalarField3& integrand, FracOrder order, const SampledFunction& q,
                                       const SampledFunction& tau, const SampledFunction& xi, double eps) {
  const Grid& grid = q.grid();
  const std::size_t size = grid.size();
  const std::size_t dim = q.dim();
  std::vector<double> t(size);
  std::vector<double> qbar(size * dim);
  for (std::size_t i = 0; i < size; ++i) {
    t[i] = grid.node(i) + eps * tau(i);
    for (std::size_t c = 0; c < dim; ++c) qbar[i * dim + c] = q(i, c) + eps * xi(i, c);
    if (i > 0 && !(t[i] > t[i - 1])) {
      throw ResamplingError("time map is not increasing at node " + std::to_string(i) +
                            " for eps = " + std::to_string(eps));
    }
  }
  const SampledFunction v = velocity_on_nodes(t, qbar, dim, grid, order);
  std::vector<double> f(size);
  for (std::size_t i = 0; i < size; ++i) {
    f[i] = integrand(t[i], std::span<const double>(qbar.data() + i * dim, dim), v.at(i));
  }
  std::vector<double> action(size, 0.0);
  for (std::size_t i = 1; i < size; ++i) action[i] = action[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i - 1] + f[i]);
  return action;
}

}  // namespace

ResidualReport first_order_invariance(const ScalarField3& integrand, FracOrder order, const SampledFunction& q,
                                      const SymmetryGenerator& gen, InvarianceOptions options) {
  if (order.alpha() > 1.0) throw UnsupportedOrder("invariance check needs 0 < alpha <= 1");
  const SampledFunction tau = sample_tau(gen, q);
  const SampledFunction xi = sample_xi(gen, q);

  auto centered = [&](double eps) {
    const std::vector<double> plus = transformed_action(integrand, order, q, tau, xi, eps);
    const std::vector<double> minus = transformed_action(integrand, order, q, tau, xi, -eps);
    std::vector<double> d(plus.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (plus[i] - minus[i]) / (2.0 * eps);
    return d;
  };
  const std::vector<double> coarse = centered(options.eps_coarse);
  const std::vector<double> fine = centered(options.eps_fine);
  const double ratio_sq = (options.eps_coarse / options.eps_fine) * (options.eps_coarse / options.eps_fine);

  SampledFunction derivative(q.grid(), 1);
  for (std::size_t i = 0; i < q.size(); ++i) derivative(i) = (ratio_sq * fine[i] - coarse[i]) / (ratio_sq - 1.0);
  return make_report(std::move(derivative), options.band);
}

ResidualReport invariance_first_order_check(const VariationalProblem& problem, const Multipliers& mult,
                                            const SampledFunction& q, const SymmetryGenerator& gen,
                                            InvarianceOptions options) {
  if (!(q.grid() == problem.grid())) throw GridMismatch("trajectory is not sampled on the problem grid");
  if (q.dim() != problem.dim()) throw DimensionMismatch("trajectory dimension differs from the problem");
  return first_order_invariance(problems::augmented_lagrangian(problem, mult), problem.order(), q, gen, options);
}

}  // namespace fracnoether::noether
