#pragma once

// Discrete stationarity system of the augmented problem on a uniform grid.
//
// The trajectory is pinned at both ends. The unknown vector stacks the
// interior nodes q_1..q_{m-1} (node-major) followed by lambda. With D the
// left derivative matrix (row 0 extrapolated from rows 1 and 2, as in
// fill_singular_endpoints) and w the trapezoid weights, the rows are
//   d_2 F_j + (D^T (w * d_3 F))_j / w_j     for j = 1..m-1,
//   sum_i w_i g(t_i, q_i, v_i) - l          for each constraint,
// i.e. the scaled gradient of the discrete augmented objective.

#include <memory>
#include <vector>

#include "fracnoether/problems.hpp"

namespace fracnoether::transcription {

class Transcription {
 public:
  explicit Transcription(problems::VariationalProblem problem);
  ~Transcription();
  Transcription(Transcription&&) noexcept;
  Transcription& operator=(Transcription&&) noexcept;

  const problems::VariationalProblem& problem() const { return problem_; }
  std::size_t unknowns() const;

  /// q (m+1 nodes, boundary pinned) and lambda from the unknown vector.
  SampledFunction trajectory(const std::vector<double>& x) const;
  problems::Multipliers multipliers(const std::vector<double>& x) const;
  std::vector<double> pack(const SampledFunction& q, const problems::Multipliers& lambda) const;

  /// Row blocks: (m-1)*n stationarity rows, then k constraint rows.
  std::vector<double> residual(const std::vector<double>& x) const;

  /// D applied to each component of a full trajectory.
  SampledFunction velocity(const SampledFunction& q) const;
  /// D^T applied to each component.
  SampledFunction velocity_adjoint(const SampledFunction& f) const;

 private:
  struct Operator;
  problems::VariationalProblem problem_;
  std::unique_ptr<Operator> op_;
};

}  // namespace fracnoether::transcription
