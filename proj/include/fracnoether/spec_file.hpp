#pragma once

// Problem specification files: `key = value` lines, `#` starts a comment.
// The format is documented field by field in docs/formats.md.

#include <optional>
#include <string>
#include <vector>

#include "fracnoether/grid.hpp"
#include "fracnoether/hamiltonian.hpp"
#include "fracnoether/noether.hpp"
#include "fracnoether/problems.hpp"

namespace fracnoether::spec {

/// Raw value of a key together with its 1-based source line.
struct Entry {
  std::string value;
  std::size_t line = 0;
};

enum class ProblemKind { kVariational, kControl };

struct TrajectorySpec {
  std::vector<Entry> q;          ///< closed-form expressions in t
  std::vector<Entry> u;
  std::vector<Entry> p;
  std::vector<Entry> q_samples;  ///< comma-separated node values, one entry per component
  std::optional<Entry> builtin;  ///< "example1"

  bool present() const { return !q.empty() || !q_samples.empty() || builtin.has_value(); }
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::kVariational;
  double alpha = 0.0;
  double a = 0.0;
  double b = 1.0;
  std::size_t grid = 0;
  std::size_t dim = 1;
  std::size_t controls = 0;

  Entry lagrangian;
  std::vector<Entry> constraints;  ///< g1..gk
  std::vector<Entry> levels;       ///< l1..lk, constant expressions
  std::vector<Entry> dynamics;     ///< phi1..phin (control problems)
  std::optional<Entry> boundary_a;
  std::optional<Entry> boundary_b;
  std::optional<Entry> initial;
  std::optional<Entry> lambda;

  std::optional<Entry> tau;
  std::vector<Entry> xi;
  std::vector<Entry> rho;
  std::vector<Entry> sigma;

  TrajectorySpec trajectory;
  std::vector<Entry> reference_q;
  std::optional<Entry> reference_lambda;

  std::size_t band = 2;
  double tol_constant = 10.0;
  std::string origin;  ///< file path, or "<text>"

  /// Copy with a different order and/or grid size, re-validated.
  ProblemSpec with_overrides(std::optional<double> alpha, std::optional<std::size_t> grid) const;
  /// Copy with the multiplier vector replaced.
  ProblemSpec with_lambda(const std::vector<double>& lambda) const;
};

/// Throws SpecError (with line information) for any malformed, unknown,
/// duplicate, inconsistent or missing entry.
ProblemSpec parse_spec_text(const std::string& text, const std::string& origin = "<text>");
ProblemSpec parse_spec(const std::string& path);

Grid make_grid(const ProblemSpec& spec);
FracOrder make_order(const ProblemSpec& spec);

/// Variables of the integrand expressions: t, q1..qn, then v1..vn
/// (variational) or u1..um (control).
std::vector<std::string> field_variables(const ProblemSpec& spec);

problems::VariationalProblem variational_problem(const ProblemSpec& spec);
hamiltonian::ControlProblem control_problem(const ProblemSpec& spec);

/// Multipliers from `lambda`; SpecError when k > 0 and none are given.
problems::Multipliers multipliers(const ProblemSpec& spec);

bool has_generator(const ProblemSpec& spec);
/// tau and xi from gen.tau / gen.xi*, missing ones read as 0.
noether::SymmetryGenerator generator(const ProblemSpec& spec);
hamiltonian::ControlSymmetry control_symmetry(const ProblemSpec& spec);

/// Candidate trajectory on make_grid(spec); SpecError when absent.
SampledFunction trajectory_q(const ProblemSpec& spec);
SampledFunction trajectory_u(const ProblemSpec& spec);
SampledFunction trajectory_p(const ProblemSpec& spec);

std::optional<SampledFunction> reference_q(const ProblemSpec& spec);
std::optional<problems::Multipliers> reference_lambda(const ProblemSpec& spec);

}  // namespace fracnoether::spec
