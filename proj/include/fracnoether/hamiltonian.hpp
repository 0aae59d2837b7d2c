#pragma once

// Fractional isoperimetric optimal control in Lagrange form:
//   min int L(t, q, u) dt,  aD^alpha q = phi(t, q, u),  int g_j dt = l_j,  q(a) = q_a,
// with Hamiltonian H = L - lambda . g + p . phi. This layer certifies or refutes
// candidate quadruples (q, u, p, lambda); it does not synthesize controls.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fracnoether/fields.hpp"
#include "fracnoether/grid.hpp"
#include "fracnoether/noether.hpp"
#include "fracnoether/problems.hpp"
#include "fracnoether/residual.hpp"

namespace fracnoether::hamiltonian {

using problems::Multipliers;

/// All maps take (t, q, u); `dynamics` holds one ScalarField3 per state component.
class ControlProblem {
 public:
  ControlProblem(FracOrder order, ScalarField3 lagrangian, std::vector<ScalarField3> dynamics,
                 std::vector<ScalarField3> constraints, std::vector<double> constraint_levels,
                 std::vector<double> initial_state, std::size_t control_dim, Grid grid);

  FracOrder order() const { return order_; }
  const ScalarField3& lagrangian() const { return lagrangian_; }
  const std::vector<ScalarField3>& dynamics() const { return dynamics_; }
  const std::vector<ScalarField3>& constraints() const { return constraints_; }
  const std::vector<double>& constraint_levels() const { return levels_; }
  const std::vector<double>& initial_state() const { return initial_; }
  const Grid& grid() const { return grid_; }
  std::size_t state_dim() const { return initial_.size(); }
  std::size_t control_dim() const { return control_dim_; }
  std::size_t k() const { return constraints_.size(); }

 private:
  FracOrder order_;
  ScalarField3 lagrangian_;
  std::vector<ScalarField3> dynamics_;
  std::vector<ScalarField3> constraints_;
  std::vector<double> levels_;
  std::vector<double> initial_;
  std::size_t control_dim_;
  Grid grid_;
};

struct PontryaginExtremal {
  SampledFunction q;  ///< state, R^n
  SampledFunction u;  ///< control, R^m
  SampledFunction p;  ///< costate, R^n
  Multipliers lambda;
};

/// Generators of t, q, u and p; only tau and xi enter the conservation law.
struct ControlSymmetry {
  using Field = std::function<void(double t, std::span<const double> q, std::span<const double> u,
                                   std::span<const double> p, std::span<double> out)>;
  noether::SymmetryGenerator generator;
  Field rho;    ///< control generator, R^m
  Field sigma;  ///< costate generator, R^n

  static ControlSymmetry zero();
  static ControlSymmetry time_translation();
};

double hamiltonian_value(const ControlProblem& cp, double t, std::span<const double> q, std::span<const double> u,
                         std::span<const double> p, const Multipliers& lambda);
/// d_2 H: gradient in q.
void hamiltonian_grad_q(const ControlProblem& cp, double t, std::span<const double> q, std::span<const double> u,
                        std::span<const double> p, const Multipliers& lambda, std::span<double> out);
/// d_3 H: gradient in u.
void hamiltonian_grad_u(const ControlProblem& cp, double t, std::span<const double> q, std::span<const double> u,
                        std::span<const double> p, const Multipliers& lambda, std::span<double> out);
/// d_4 H = phi(t, q, u), exactly.
void hamiltonian_grad_p(const ControlProblem& cp, double t, std::span<const double> q, std::span<const double> u,
                        std::span<double> out);

struct PontryaginResiduals {
  ResidualReport state;       ///< aD^alpha q - d_4 H
  ResidualReport costate;     ///< tD_b^alpha p - d_2 H
  ResidualReport stationary;  ///< d_3 H
  bool certified(double tolerance) const {
    return state.passes(tolerance) && costate.passes(tolerance) && stationary.passes(tolerance);
  }
};

PontryaginResiduals pontryagin_residuals(const ControlProblem& cp, const PontryaginExtremal& ext,
                                         std::size_t band = kDefaultBand);

/// D^alpha(H - (1 - alpha) p . aD^alpha q, tau) - D^alpha(p, xi).
ResidualReport hamiltonian_noether_residual(const ControlProblem& cp, const PontryaginExtremal& ext,
                                            const ControlSymmetry& sym, std::size_t band = kDefaultBand);

/// aD^alpha[H + (alpha - 1) p . aD^alpha q]; throws AutonomyError unless L, phi and g
/// pass the random-probe t-independence check.
ResidualReport autonomous_energy_residual(const ControlProblem& cp, const PontryaginExtremal& ext,
                                          std::size_t band = kDefaultBand);

bool is_autonomous(const ControlProblem& cp, std::size_t probes = 32, std::uint64_t seed = 2024);

/// H(t, q, u, p) sampled along the quadruple.
SampledFunction hamiltonian_along(const ControlProblem& cp, const PontryaginExtremal& ext);

/// Integrand H - p . v_q of the augmented functional, as a field of the stacked
/// state x = (q, u, p) and its fractional velocity.
ScalarField3 lifted_integrand(const ControlProblem& cp, const Multipliers& lambda);

/// A variational problem read as a control problem with phi = u, together
/// with the quadruple (q, u = aD^alpha q, p = -d_3 F, lambda) along q.
struct VariationalLift {
  ControlProblem problem;
  PontryaginExtremal extremal;
};

VariationalLift lift_variational(const problems::VariationalProblem& problem, const SampledFunction& q,
                                 const Multipliers& lambda);

/// (q, u, p) stacked node-wise into one sampled function.
SampledFunction stack_state(const PontryaginExtremal& ext);

}  // namespace fracnoether::hamiltonian
