#pragma once

// Command implementations behind the fracnoether executable. Each command
// writes its machine-readable report (JSON) and profiles (CSV) under an output
// directory and returns the process exit code.

#include <optional>
#include <string>
#include <vector>

#include "fracnoether/solver.hpp"

namespace fracnoether::cli {

enum ExitCode : int {
  kPass = 0,
  kResidualExceeded = 1,
  kComputationFailed = 2,
  kSpecInvalid = 3,
};

struct CommonOptions {
  std::optional<std::size_t> grid;
  std::optional<double> alpha;
  std::optional<double> tol;          ///< absolute residual tolerance; default c * h^min(1, 2 - alpha)
  std::optional<std::vector<double>> lambda;
  std::string out_dir = ".";
};

struct CheckOptions : CommonOptions {
  std::string which = "el";  ///< el | noether | momentum | hamiltonian | invariance
};

struct SolveOptions : CommonOptions {
  solver::SolverConfig config;
};

struct SelftestOptions {
  std::optional<std::string> out_dir;  ///< report.json is written only when set
  bool corrupt_gamma = false;          ///< fault injection for the gamma function
};

struct RunReport {
  int exit_code = kPass;
  std::string json;     ///< serialized report, byte-stable for identical inputs
  std::string summary;  ///< human-readable lines for stdout
};

RunReport cmd_check(const std::string& spec_path, const CheckOptions& options);
RunReport cmd_solve(const std::string& spec_path, const SolveOptions& options);
RunReport cmd_selftest(const SelftestOptions& options);

const std::vector<std::string>& check_kinds();

}  // namespace fracnoether::cli
