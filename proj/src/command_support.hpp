#pragma once

#include <string>
#include <vector>

namespace fracnoether::cli::detail {

struct OracleResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Built-in oracle battery behind `fracnoether selftest`.
std::vector<OracleResult> run_oracles(bool corrupt_gamma);

std::string format_number(double x);

}  // namespace fracnoether::cli::detail
