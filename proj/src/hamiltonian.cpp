#include "fracnoether/hamiltonian.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fracnoether/errors.hpp"
#include "fracnoether/frac_ops.hpp"

namespace fracnoether::hamiltonian {

ControlProblem::ControlProblem(FracOrder order, ScalarField3 lagrangian, std::vector<ScalarField3> dynamics,
                               std::vector<ScalarField3> constraints, std::vector<double> constraint_levels,
                               std::vector<double> initial_state, std::size_t control_dim, Grid grid)
    : order_(order),
      lagrangian_(std::move(lagrangian)),
      dynamics_(std::move(dynamics)),
      constraints_(std::move(constraints)),
      levels_(std::move(constraint_levels)),
      initial_(std::move(initial_state)),
      control_dim_(control_dim),
      grid_(grid) {
  if (order_.alpha() > 1.0) throw UnsupportedOrder("control problems need 0 < alpha <= 1");
  if (!lagrangian_) throw PreconditionError("control problem needs a Lagrangian");
  if (initial_.empty()) throw DimensionMismatch("control problem needs a nonempty initial state");
  if (control_dim_ == 0) throw DimensionMismatch("control problem needs at least one control");
  if (dynamics_.size() != initial_.size()) {
    throw DimensionMismatch("dynamics has " + std::to_string(dynamics_.size()) + " components for a state of dimension " +
                            std::to_string(initial_.size()));
  }
  if (levels_.size() != constraints_.size()) throw DimensionMismatch("constraint and level counts differ");
}

ControlSymmetry ControlSymmetry::zero() {
  auto nothing = [](double, std::span<const double>, std::span<const double>, std::span<const double>,
                    std::span<double> out) {
    for (double& x : out) x = 0.0;
  };
  return {noether::SymmetryGenerator::zero(), nothing, nothing};
}

ControlSymmetry ControlSymmetry::time_translation() {
  ControlSymmetry sym = zero();
  sym.generator.tau = [](double, std::span<const double>) { return 1.0; };
  return sym;
}

namespace {

void require_lambda(const ControlProblem& cp, const Multipliers& lambda) {
  if (lambda.lambda.size() != cp.k()) {
    throw DimensionMismatch("expected " + std::to_string(cp.k()) + " multipliers, got " +
                            std::to_string(lambda.lambda.size()));
  }
}

void require_dims(const ControlProblem& cp, std::span<const double> q, std::span<const double> u,
                  std::span<const double> p) {
  if (q.size() != cp.state_dim() || p.size() != cp.state_dim() || u.size() != cp.control_dim()) {
    throw DimensionMismatch("state, control or costate has the wrong dimension");
  }
}

}  // namespace

double hamiltonian_value(const ControlProblem& cp, double t, std::span<const double> q, std::span<const double> u,
                         std::span<const double> p, const Multipliers& lambda) {
  require_lambda(cp, lambda);
  require_dims(cp, q, u, p);
  double h = cp.lagrangian()(t, q, u);
  for (std::size_t j = 0; j < cp.k(); ++j) h -= lambda.lambda[j] * cp.constraints()[j](t, q, u);
  for (std::size_t i = 0; i < cp.state_dim(); ++i) h += p[i] * cp.dynamics()[i](t, q, u);
  return h;
}

void hamiltonian_grad_q(const ControlProblem& cp, double t, std::span<const double> q, std::span<const double> u,
                        std::span<const double> p, const Multipliers& lambda, std::span<double> out) {
  require_lambda(cp, lambda);
  require_dims(cp, q, u, p);
  std::vector<double> part(q.size());
  cp.lagrangian().grad_q(t, q, u, out);
  for (std::size_t j = 0; j < cp.k(); ++j) {
    cp.constraints()[j].grad_q(t, q, u, part);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] -= lambda.lambda[j] * part[c];
  }
  for (std::size_t i = 0; i < cp.state_dim(); ++i) {
    cp.dynamics()[i].grad_q(t, q, u, part);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += p[i] * part[c];
  }
}

void hamiltonian_grad_u(const ControlProblem& cp, double t, std::span<const double> q, std::span<const double> u,
                        std::span<const double> p, const Multipliers& lambda, std::span<double> out) {
  require_lambda(cp, lambda);
  require_dims(cp, q, u, p);
  std::vector<double> part(u.size());
  cp.lagrangian().grad_v(t, q, u, out);
  for (std::size_t j = 0; j < cp.k(); ++j) {
    cp.constraints()[j].grad_v(t, q, u, part);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] -= lambda.lambda[j] * part[c];
  }
  for (std::size_t i = 0; i < cp.state_dim(); ++i) {
    cp.dynamics()[i].grad_v(t, q, u, part);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += p[i] * part[c];
  }
}

void hamiltonian_grad_p(const ControlProblem& cp, double t, std::span<const double> q, std::span<const double> u,
                        std::span<double> out) {
  if (out.size() != cp.state_dim()) throw DimensionMismatch("costate gradient has the wrong dimension");
  for (std::size_t i = 0; i < cp.state_dim(); ++i) out[i] = cp.dynamics()[i](t, q, u);
}

namespace {

void require_extremal_shape(const ControlProblem& cp, const PontryaginExtremal& ext) {
  if (!(ext.q.grid() == cp.grid()) || !(ext.u.grid() == cp.grid()) || !(ext.p.grid() == cp.grid())) {
    throw GridMismatch("extremal is not sampled on the problem grid");
  }
  if (ext.q.dim() != cp.state_dim() || ext.p.dim() != cp.state_dim() || ext.u.dim() != cp.control_dim()) {
    throw DimensionMismatch("extremal dimensions do not match the control problem");
  }
  require_lambda(cp, ext.lambda);
  for (std::size_t c = 0; c < cp.state_dim(); ++c) {
    const double qa = cp.initial_state()[c];
    if (std::abs(ext.q(0, c) - qa) > 1e-8 * (1.0 + std::abs(qa))) {
      throw PreconditionError("extremal violates the initial condition in component " + std::to_string(c));
    }
  }
}

}  // namespace

SampledFunction hamiltonian_along(const ControlProblem& cp, const PontryaginExtremal& ext) {
  require_extremal_shape(cp, ext);
  SampledFunction h(cp.grid(), 1);
  for (std::size_t i = 0; i < cp.grid().size(); ++i) {
    h(i) = hamiltonian_value(cp, cp.grid().node(i), ext.q.at(i), ext.u.at(i), ext.p.at(i), ext.lambda);
  }
  return h;
}

PontryaginResiduals pontryagin_residuals(const ControlProblem& cp, const PontryaginExtremal& ext, std::size_t band) {
  require_extremal_shape(cp, ext);
  const Grid& grid = cp.grid();
  const SampledFunction dq = left_rl_derivative(ext.q, cp.order());
  const SampledFunction dp = right_rl_derivative(ext.p, cp.order());

  SampledFunction state(grid, cp.state_dim());
  SampledFunction costate(grid, cp.state_dim());
  SampledFunction stationary(grid, cp.control_dim());
  std::vector<double> buffer(cp.state_dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.node(i);
    hamiltonian_grad_p(cp, t, ext.q.at(i), ext.u.at(i), buffer);
    for (std::size_t c = 0; c < cp.state_dim(); ++c) state(i, c) = dq(i, c) - buffer[c];
    hamiltonian_grad_q(cp, t, ext.q.at(i), ext.u.at(i), ext.p.at(i), ext.lambda, buffer);
    for (std::size_t c = 0; c < cp.state_dim(); ++c) costate(i, c) = dp(i, c) - buffer[c];
    hamiltonian_grad_u(cp, t, ext.q.at(i), ext.u.at(i), ext.p.at(i), ext.lambda, stationary.at(i));
  }
  return {make_report(std::move(state), band), make_report(std::move(costate), band),
          make_report(std::move(stationary), band)};
}

namespace {

// H + shift * p . aD^alpha q along the quadruple.
SampledFunction shifted_hamiltonian(const ControlProblem& cp, const PontryaginExtremal& ext, double shift) {
  SampledFunction h = hamiltonian_along(cp, ext);
  const SampledFunction dq = fill_singular_endpoints(left_rl_derivative(ext.q, cp.order()));
  for (std::size_t i = 0; i < h.size(); ++i) {
    double dot = 0.0;
    for (std::size_t c = 0; c < cp.state_dim(); ++c) dot += ext.p(i, c) * dq(i, c);
    h(i) += shift * dot;
  }
  return h;
}

}  // namespace

ResidualReport hamiltonian_noether_residual(const ControlProblem& cp, const PontryaginExtremal& ext,
                                            const ControlSymmetry& sym, std::size_t band) {
  require_extremal_shape(cp, ext);
  const FracOrder order = cp.order();
  const SampledFunction energy = shifted_hamiltonian(cp, ext, -(1.0 - order.alpha()));
  SampledFunction r = noether::frac_pair_operator(energy, noether::sample_tau(sym.generator, ext.q), order);
  r += -1.0 * noether::frac_pair_operator(ext.p, noether::sample_xi(sym.generator, ext.q), order);
  return make_report(std::move(r), band);
}

ResidualReport autonomous_energy_residual(const ControlProblem& cp, const PontryaginExtremal& ext,
                                          std::size_t band) {
  require_extremal_shape(cp, ext);
  if (!is_autonomous(cp)) throw AutonomyError("L, phi or g depends explicitly on t");
  const SampledFunction energy = shifted_hamiltonian(cp, ext, cp.order().alpha() - 1.0);
  return make_report(left_rl_derivative(energy, cp.order()), band);
}

bool is_autonomous(const ControlProblem& cp, std::size_t probes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t_dist(cp.grid().a(), cp.grid().b());
  std::uniform_real_distribution<double> x_dist(-1.0, 1.0);
  std::vector<double> q(cp.state_dim()), u(cp.control_dim());
  auto same = [](double x, double y) { return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(x) + std::abs(y)); };
  for (std::size_t s = 0; s < probes; ++s) {
    for (double& x : q) x = x_dist(rng);
    for (double& x : u) x = x_dist(rng);
    const double t1 = t_dist(rng);
    const double t2 = t_dist(rng);
    if (!same(cp.lagrangian()(t1, q, u), cp.lagrangian()(t2, q, u))) return false;
    for (const ScalarField3& f : cp.dynamics()) {
      if (!same(f(t1, q, u), f(t2, q, u))) return false;
    }
    for (const ScalarField3& g : cp.constraints()) {
      if (!same(g(t1, q, u), g(t2, q, u))) return false;
    }
  }
  return true;
}

ScalarField3 lifted_integrand(const ControlProblem& cp, const Multipliers& lambda) {
  require_lambda(cp, lambda);
  const std::size_t n = cp.state_dim();
  const std::size_t m = cp.control_dim();
  return ScalarField3([cp, lambda, n, m](double t, std::span<const double> x, std::span<const double> v) {
    const auto q = x.subspan(0, n);
    const auto u = x.subspan(n, m);
    const auto p = x.subspan(n + m, n);
    double value = hamiltonian_value(cp, t, q, u, p, lambda);
    for (std::size_t c = 0; c < n; ++c) value -= p[c] * v[c];
    return value;
  });
}

VariationalLift lift_variational(const problems::VariationalProblem& problem, const SampledFunction& q,
                                 const Multipliers& lambda) {
  problems::require_admissible(problem, q);
  const std::size_t n = problem.dim();
  std::vector<ScalarField3> dynamics;
  for (std::size_t i = 0; i < n; ++i) {
    dynamics.emplace_back(
        [i](double, std::span<const double>, std::span<const double> u) { return u[i]; },
        [](double, std::span<const double>, std::span<const double>, std::span<double> out) {
          for (double& x : out) x = 0.0;
        },
        [i](double, std::span<const double>, std::span<const double>, std::span<double> out) {
          for (double& x : out) x = 0.0;
          out[i] = 1.0;
        });
  }
  ControlProblem cp(problem.order(), problem.lagrangian(), std::move(dynamics), problem.constraints(),
                    problem.constraint_levels(), problem.boundary_a(), n, problem.grid());
  const auto fields = problems::evaluate_along(problems::augmented_lagrangian(problem, lambda), q, problem.order());
  PontryaginExtremal ext{q, fields.velocity, -1.0 * fields.grad_v, lambda};
  return {std::move(cp), std::move(ext)};
}

SampledFunction stack_state(const PontryaginExtremal& ext) {
  const std::size_t n = ext.q.dim();
  const std::size_t m = ext.u.dim();
  SampledFunction x(ext.q.grid(), 2 * n + m);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t c = 0; c < n; ++c) x(i, c) = ext.q(i, c);
    for (std::size_t c = 0; c < m; ++c) x(i, n + c) = ext.u(i, c);
    for (std::size_t c = 0; c < n; ++c) x(i, n + m + c) = ext.p(i, c);
  }
  return x;
}

}  // namespace fracnoether::hamiltonian
