#pragma once

// Direct-transcription solver for the isoperimetric problem: damped Newton on
// the discrete stationarity system of fracnoether/transcription.hpp, with a
// forward-difference dense Jacobian and partial-pivoting LU.

#include <optional>
#include <string>
#include <vector>

#include "fracnoether/problems.hpp"
#include "fracnoether/residual.hpp"

namespace fracnoether::solver {

struct SolverConfig {
  int max_iterations = 50;
  double newton_tolerance = 1e-8;  ///< sup-norm of the discrete residual
  double fd_step = 1e-7;           ///< relative forward-difference step for the Jacobian
  int continuation_steps = 0;      ///< alpha steps from 1 down to the target order
  double regularization = 0.0;     ///< mu added to the Jacobian diagonal

  /// Throws PreconditionError on out-of-range fields.
  void validate() const;
};

struct Solution {
  SampledFunction q;
  problems::Multipliers lambda;
  ResidualReport el;                          ///< discrete stationarity rows, zero at the pinned ends
  std::vector<double> constraint_residual;    ///< sum w g - l per constraint
  std::vector<double> boundary_residual;      ///< q(a) - phi, q(b) - psi per component
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> warnings;

  /// Largest of the el, constraint and boundary norms.
  double residual_norm() const;
};

/// Solves from `initial_guess` or, without one, from linear interpolation
/// between the boundary values with lambda = 0. Non-convergence returns the
/// best iterate with converged = false; a numerically singular Jacobian
/// throws SingularJacobian.
Solution solve(const problems::VariationalProblem& problem, const SolverConfig& config = {},
               const std::optional<Solution>& initial_guess = std::nullopt);

struct Refinement {
  Solution solution;
  /// log2 of the ratio of evaluator EL sup-norms on the coarse and fine grids.
  double empirical_order = 0.0;
  double coarse_el_norm = 0.0;
  double fine_el_norm = 0.0;
};

/// Re-solves on m * factor intervals warm-started by linear interpolation of
/// a converged solution. Throws PreconditionError for non-converged input.
Refinement refine(const problems::VariationalProblem& problem, const Solution& solution, std::size_t factor,
                  const SolverConfig& config = {});

/// Piecewise-linear resampling of q onto another grid over the same interval.
SampledFunction interpolate(const SampledFunction& q, const Grid& target);

}  // namespace fracnoether::solver
