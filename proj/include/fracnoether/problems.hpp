#pragma once

// Fractional isoperimetric problem: stationary functions of
//   I[q] = int_a^b L(t, q, aD^alpha q) dt
// subject to int_a^b g_j(t, q, aD^alpha q) dt = l_j and q(a) = phi, q(b) = psi.

#include <cstddef>
#include <optional>
#include <vector>

#include "fracnoether/fields.hpp"
#include "fracnoether/grid.hpp"
#include "fracnoether/residual.hpp"

namespace fracnoether::problems {

struct Multipliers {
  std::vector<double> lambda;
};

class VariationalProblem {
 public:
  VariationalProblem(FracOrder order, ScalarField3 lagrangian, std::vector<ScalarField3> constraints,
                     std::vector<double> constraint_levels, std::vector<double> boundary_a,
                     std::vector<double> boundary_b, Grid grid);

  FracOrder order() const { return order_; }
  const ScalarField3& lagrangian() const { return lagrangian_; }
  const std::vector<ScalarField3>& constraints() const { return constraints_; }
  const std::vector<double>& constraint_levels() const { return levels_; }
  const std::vector<double>& boundary_a() const { return boundary_a_; }
  const std::vector<double>& boundary_b() const { return boundary_b_; }
  const Grid& grid() const { return grid_; }
  std::size_t dim() const { return boundary_a_.size(); }
  std::size_t k() const { return constraints_.size(); }

  VariationalProblem with_grid(Grid grid) const;
  VariationalProblem with_order(FracOrder order) const;
  VariationalProblem with_lagrangian(ScalarField3 lagrangian) const;
  VariationalProblem with_constraint(std::size_t j, ScalarField3 g, double level) const;

 private:
  FracOrder order_;
  ScalarField3 lagrangian_;
  std::vector<ScalarField3> constraints_;
  std::vector<double> levels_;
  std::vector<double> boundary_a_;
  std::vector<double> boundary_b_;
  Grid grid_;
};

/// Integrand quantities sampled along a trajectory.
struct TrajectoryFields {
  SampledFunction velocity;  ///< aD^alpha q, singular endpoint filled by extrapolation
  SampledFunction value;     ///< F(t_i, q_i, v_i)
  SampledFunction grad_q;    ///< d_2 F
  SampledFunction grad_v;    ///< d_3 F
};

/// aD_t^alpha q, component-wise, singular endpoint marked.
SampledFunction frac_velocity(const SampledFunction& q, FracOrder order);

/// F = L - lambda . g.
ScalarField3 augmented_lagrangian(const VariationalProblem& problem, const Multipliers& mult);

TrajectoryFields evaluate_along(const ScalarField3& integrand, const SampledFunction& q, FracOrder order);

/// Composite trapezoid weights of the grid.
std::vector<double> trapezoid_weights(const Grid& grid);

std::vector<double> constraint_values(const VariationalProblem& problem, const SampledFunction& q);
double objective_value(const VariationalProblem& problem, const SampledFunction& q);

/// r(t) = d_2 F + tD_b^alpha d_3 F along q.
ResidualReport euler_lagrange_residual(const VariationalProblem& problem, const Multipliers& mult,
                                       const SampledFunction& q, std::size_t band = kDefaultBand);

struct NormalityResult {
  ResidualReport report;
  bool abnormal = false;  ///< g_j itself satisfies the EL-type equation along q
};

/// s(t) = d_2 g_j + tD_b^alpha d_3 g_j; abnormal when sup_norm < tolerance
/// (default: certification_tolerance of the problem grid).
NormalityResult normality_check(const VariationalProblem& problem, const SampledFunction& q, std::size_t j,
                                std::optional<double> tolerance = std::nullopt,
                                std::size_t band = kDefaultBand);

/// Throws unless q lives on the problem grid with matching dimension and boundary values.
void require_admissible(const VariationalProblem& problem, const SampledFunction& q);

}  // namespace fracnoether::problems
