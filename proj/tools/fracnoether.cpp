// fracnoether <check|solve|selftest> [options] <spec>

#include <CLI11.hpp>
#include <iostream>

#include "fracnoether/commands.hpp"
#include "fracnoether/errors.hpp"

namespace cli = fracnoether::cli;

namespace {

void add_common(CLI::App* cmd, cli::CommonOptions& opts, std::string& spec) {
  cmd->add_option("spec", spec, "problem specification file")->required();
  cmd->add_option("--grid", opts.grid, "number of grid intervals m")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", opts.alpha, "fractional order in (0, 1]");
  cmd->add_option("--tol", opts.tol, "absolute residual tolerance");
  cmd->add_option("--lambda", opts.lambda, "multipliers, overriding the spec")->delimiter(',');
  cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Noether and Pontryagin residual checker"};
  app.require_subcommand(1);

  std::string spec;
  cli::CheckOptions check;
  cli::SolveOptions solve;
  cli::SelftestOptions selftest;

  CLI::App* check_cmd = app.add_subcommand("check", "certify a candidate trajectory against a law");
  add_common(check_cmd, check, spec);
  check_cmd->add_option("--which", check.which, "el | noether | momentum | hamiltonian | invariance")
      ->check(CLI::IsMember(cli::check_kinds()))
      ->capture_default_str();

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve the isoperimetric problem by direct transcription");
  add_common(solve_cmd, solve, spec);
  solve_cmd->add_option("--max-iterations", solve.config.max_iterations)->capture_default_str();
  solve_cmd->add_option("--newton-tol", solve.config.newton_tolerance)->capture_default_str();
  solve_cmd->add_option("--continuation-steps", solve.config.continuation_steps)->capture_default_str();
  solve_cmd->add_option("--regularization", solve.config.regularization)->capture_default_str();

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the built-in oracle battery");
  std::string selftest_out;
  selftest_cmd->add_option("--out", selftest_out, "write report.json to this directory");
  selftest_cmd->add_flag("--corrupt-gamma", selftest.corrupt_gamma, "perturb the gamma function (fault injection)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kPass : cli::kSpecInvalid;
  }

  cli::RunReport report;
  if (check_cmd->parsed()) {
    report = cli::cmd_check(spec, check);
  } else if (solve_cmd->parsed()) {
    try {
      solve.config.validate();
    } catch (const fracnoether::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cli::kSpecInvalid;
    }
    report = cli::cmd_solve(spec, solve);
  } else {
    if (!selftest_out.empty()) selftest.out_dir = selftest_out;
    report = cli::cmd_selftest(selftest);
  }
  std::cout << report.summary;
  return report.exit_code;
}
