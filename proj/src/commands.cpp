#include "fracnoether/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fracnoether/errors.hpp"
#include "fracnoether/hamiltonian.hpp"
#include "fracnoether/noether.hpp"
#include "fracnoether/problems.hpp"
#include "fracnoether/spec_file.hpp"
#include "command_support.hpp"

namespace fracnoether::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

const std::vector<std::string>& check_kinds() {
  static const std::vector<std::string> kinds = {"el", "noether", "momentum", "hamiltonian", "invariance"};
  return kinds;
}

namespace detail {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return x;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string profile_csv(const ResidualReport& report) {
  std::ostringstream out;
  out << "t";
  for (std::size_t c = 0; c < report.components.dim(); ++c) out << ",r" << (c + 1);
  out << ",abs\n";
  const Grid& grid = report.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_number(grid.node(i));
    for (std::size_t c = 0; c < report.components.dim(); ++c) out << "," << format_number(report.components(i, c));
    out << "," << format_number(report.pointwise(i)) << "\n";
  }
  return out.str();
}

}  // namespace detail

namespace {

using detail::number;

struct Context {
  spec::ProblemSpec spec;
  Grid grid;
  FracOrder order;
  double tolerance;
  fs::path out_dir;
};

Context make_context(const std::string& spec_path, const CommonOptions& options) {
  spec::ProblemSpec s = spec::parse_spec(spec_path).with_overrides(options.alpha, options.grid);
  if (options.lambda) s = s.with_lambda(*options.lambda);
  if (options.tol && !(*options.tol > 0.0)) throw SpecError("--tol must be positive", 0);
  const Grid grid = spec::make_grid(s);
  const FracOrder order = spec::make_order(s);
  const double tol = options.tol.value_or(certification_tolerance(grid, order, s.tol_constant));
  fs::path out(options.out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error("cannot create output directory " + out.string() + ": " + ec.message());
  return {std::move(s), grid, order, tol, out};
}

json grid_json(const Grid& grid) {
  json g;
  g["a"] = number(grid.a());
  g["b"] = number(grid.b());
  g["m"] = grid.m();
  g["h"] = number(grid.h());
  return g;
}

json vector_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

class CheckList {
 public:
  CheckList(const Context& ctx, json& doc) : ctx_(ctx), doc_(doc) { doc_["checks"] = json::array(); }

  void add_report(const std::string& name, const ResidualReport& report) {
    const fs::path path = ctx_.out_dir / (name + "_profile.csv");
    detail::write_text(path, detail::profile_csv(report));
    const bool passed = report.passes(ctx_.tolerance);
    json c;
    c["name"] = name;
    c["sup_norm"] = number(report.sup_norm);
    c["l2_norm"] = number(report.l2_norm);
    c["tolerance"] = number(ctx_.tolerance);
    c["excluded_band"] = report.excluded_band;
    c["passed"] = passed;
    c["profile"] = path.filename().string();
    doc_["checks"].push_back(c);
    all_passed_ = all_passed_ && passed;
    lines_ << (passed ? "PASS " : "FAIL ") << name << "  sup=" << detail::format_number(report.sup_norm)
           << "  tol=" << detail::format_number(ctx_.tolerance) << "\n";
  }

  void add_scalar(const std::string& name, double value, double target) {
    const double error = std::abs(value - target);
    const bool passed = error <= ctx_.tolerance;
    json c;
    c["name"] = name;
    c["value"] = number(value);
    c["target"] = number(target);
    c["abs_error"] = number(error);
    c["tolerance"] = number(ctx_.tolerance);
    c["passed"] = passed;
    doc_["checks"].push_back(c);
    all_passed_ = all_passed_ && passed;
    lines_ << (passed ? "PASS " : "FAIL ") << name << "  |err|=" << detail::format_number(error)
           << "  tol=" << detail::format_number(ctx_.tolerance) << "\n";
  }

  void note(const std::string& text) {
    doc_["notes"].push_back(text);
    lines_ << "NOTE " << text << "\n";
  }

  bool all_passed() const { return all_passed_; }
  std::string lines() const { return lines_.str(); }

 private:
  const Context& ctx_;
  json& doc_;
  bool all_passed_ = true;
  std::ostringstream lines_;
};

void run_hamiltonian_checks(const Context& ctx, const hamiltonian::ControlProblem& cp,
                            const hamiltonian::PontryaginExtremal& ext, CheckList& checks) {
  const std::size_t band = ctx.spec.band;
  const hamiltonian::PontryaginResiduals pr = hamiltonian::pontryagin_residuals(cp, ext, band);
  checks.add_report("pontryagin_state", pr.state);
  checks.add_report("pontryagin_costate", pr.costate);
  checks.add_report("pontryagin_stationary", pr.stationary);
  if (spec::has_generator(ctx.spec)) {
    hamiltonian::ControlSymmetry sym = hamiltonian::ControlSymmetry::zero();
    sym.generator = spec::generator(ctx.spec);
    checks.add_report("hamiltonian_noether", hamiltonian::hamiltonian_noether_residual(cp, ext, sym, band));
  }
  if (hamiltonian::is_autonomous(cp)) {
    checks.add_report("autonomous_energy", hamiltonian::autonomous_energy_residual(cp, ext, band));
  } else {
    checks.note("autonomous_energy skipped: L, phi or g depends explicitly on t");
  }
}

void run_checks(const Context& ctx, const std::string& which, CheckList& checks, json& doc) {
  const spec::ProblemSpec& s = ctx.spec;
  const std::size_t band = s.band;
  if (s.kind == spec::ProblemKind::kControl) {
    if (which != "hamiltonian") throw SpecError("control specifications support only --which hamiltonian", 0);
    const hamiltonian::ControlProblem cp = spec::control_problem(s);
    const hamiltonian::PontryaginExtremal ext{spec::trajectory_q(s), spec::trajectory_u(s), spec::trajectory_p(s),
                                              spec::multipliers(s)};
    doc["lambda"] = vector_json(ext.lambda.lambda);
    run_hamiltonian_checks(ctx, cp, ext, checks);
    return;
  }

  const problems::VariationalProblem problem = spec::variational_problem(s);
  const SampledFunction q = spec::trajectory_q(s);
  const problems::Multipliers lambda = spec::multipliers(s);
  doc["lambda"] = vector_json(lambda.lambda);

  if (which == "el") {
    checks.add_report("euler_lagrange", problems::euler_lagrange_residual(problem, lambda, q, band));
    const std::vector<double> values = problems::constraint_values(problem, q);
    for (std::size_t j = 0; j < values.size(); ++j) {
      checks.add_scalar("constraint_" + std::to_string(j + 1), values[j], problem.constraint_levels()[j]);
    }
  } else if (which == "noether") {
    if (!spec::has_generator(s)) throw SpecError("--which noether needs gen.tau and/or gen.xi", 0);
    checks.add_report("noether", noether::noether_law_residual(problem, lambda, q, spec::generator(s), band));
  } else if (which == "momentum") {
    if (!spec::has_generator(s)) throw SpecError("--which momentum needs gen.xi", 0);
    try {
      checks.add_report("momentum", noether::momentum_law_residual(problem, lambda, q, spec::generator(s), band));
    } catch (const PreconditionError& err) {
      throw SpecError(std::string("--which momentum: ") + err.what(), 0);
    }
  } else if (which == "invariance") {
    if (!spec::has_generator(s)) throw SpecError("--which invariance needs gen.tau and/or gen.xi", 0);
    noether::InvarianceOptions opts;
    opts.band = band;
    checks.add_report("invariance",
                      noether::invariance_first_order_check(problem, lambda, q, spec::generator(s), opts));
  } else if (which == "hamiltonian") {
    const hamiltonian::VariationalLift lift = hamiltonian::lift_variational(problem, q, lambda);
    checks.note("variational problem lifted to phi = u, u = aD^alpha q, p = -d_3 F");
    run_hamiltonian_checks(ctx, lift.problem, lift.extremal, checks);
  } else {
    throw SpecError("unknown check '" + which + "'", 0);
  }
}

json base_document(const std::string& command, const std::string& spec_path) {
  json doc;
  doc["tool"] = "fracnoether";
  doc["command"] = command;
  doc["spec"] = spec_path;
  return doc;
}

void describe(json& doc, const Context& ctx) {
  doc["kind"] = ctx.spec.kind == spec::ProblemKind::kControl ? "control" : "variational";
  doc["alpha"] = number(ctx.spec.alpha);
  doc["grid"] = grid_json(ctx.grid);
  doc["band"] = ctx.spec.band;
  doc["tolerance"] = number(ctx.tolerance);
}

const char* status_name(int code) {
  switch (code) {
    case kPass: return "pass";
    case kResidualExceeded: return "residual_exceeded";
    case kComputationFailed: return "computation_failed";
    default: return "spec_invalid";
  }
}

RunReport finish(json doc, int code, const std::string& lines, const std::optional<fs::path>& out_dir) {
  doc["status"] = status_name(code);
  doc["exit_code"] = code;
  RunReport report;
  report.exit_code = code;
  report.json = doc.dump(2) + "\n";
  report.summary = lines + "status: " + status_name(code) + "\n";
  if (out_dir) {
    try {
      detail::write_text(*out_dir / "report.json", report.json);
    } catch (const Error& err) {
      report.summary += std::string("error: ") + err.what() + "\n";
      if (report.exit_code == kPass || report.exit_code == kResidualExceeded) report.exit_code = kComputationFailed;
    }
  }
  return report;
}

// Runs `body`, mapping exceptions onto the exit-code contract.
template <class Body>
RunReport guarded(json doc, const std::string& out_dir, Body&& body) {
  std::optional<fs::path> out;
  try {
    return body(doc, out);
  } catch (const SpecError& err) {
    doc["error"] = err.what();
    return finish(std::move(doc), kSpecInvalid, std::string("error: ") + err.what() + "\n", out);
  } catch (const ParseError& err) {
    doc["error"] = err.what();
    return finish(std::move(doc), kSpecInvalid, std::string("error: ") + err.what() + "\n", out);
  } catch (const std::exception& err) {
    doc["error"] = err.what();
    if (!out) {
      std::error_code ec;
      if (fs::is_directory(out_dir, ec)) out = fs::path(out_dir);
    }
    return finish(std::move(doc), kComputationFailed, std::string("error: ") + err.what() + "\n", out);
  }
}

}  // namespace

RunReport cmd_check(const std::string& spec_path, const CheckOptions& options) {
  json doc = base_document("check", spec_path);
  doc["which"] = options.which;
  return guarded(std::move(doc), options.out_dir, [&](json& d, std::optional<fs::path>& out) {
    if (std::find(check_kinds().begin(), check_kinds().end(), options.which) == check_kinds().end()) {
      throw SpecError("unknown check '" + options.which + "'", 0);
    }
    const Context ctx = make_context(spec_path, options);
    out = ctx.out_dir;
    describe(d, ctx);
    CheckList checks(ctx, d);
    run_checks(ctx, options.which, checks, d);
    return finish(std::move(d), checks.all_passed() ? kPass : kResidualExceeded, checks.lines(), out);
  });
}

RunReport cmd_solve(const std::string& spec_path, const SolveOptions& options) {
  json doc = base_document("solve", spec_path);
  return guarded(std::move(doc), options.out_dir, [&](json& d, std::optional<fs::path>& out) {
    const Context ctx = make_context(spec_path, options);
    out = ctx.out_dir;
    if (ctx.spec.kind != spec::ProblemKind::kVariational) throw SpecError("solve supports variational problems only", 0);
    describe(d, ctx);
    options.config.validate();
    const problems::VariationalProblem problem = spec::variational_problem(ctx.spec);
    const solver::Solution sol = solver::solve(problem, options.config);

    json s;
    s["converged"] = sol.converged;
    s["iterations"] = sol.iterations;
    s["residual_norm"] = number(sol.residual_norm());
    s["newton_tolerance"] = number(options.config.newton_tolerance);
    s["continuation_steps"] = options.config.continuation_steps;
    s["regularization"] = number(options.config.regularization);
    s["lambda"] = vector_json(sol.lambda.lambda);
    s["warnings"] = sol.warnings;
    d["solver"] = s;

    const std::optional<SampledFunction> ref = spec::reference_q(ctx.spec);
    std::ostringstream csv;
    csv << "t";
    for (std::size_t c = 0; c < problem.dim(); ++c) csv << ",q" << (c + 1);
    if (ref) {
      for (std::size_t c = 0; c < problem.dim(); ++c) csv << ",ref" << (c + 1);
      for (std::size_t c = 0; c < problem.dim(); ++c) csv << ",dev" << (c + 1);
    }
    csv << "\n";
    double max_dev = 0.0;
    double max_ref = 0.0;
    for (std::size_t i = 0; i < ctx.grid.size(); ++i) {
      csv << detail::format_number(ctx.grid.node(i));
      for (std::size_t c = 0; c < problem.dim(); ++c) csv << "," << detail::format_number(sol.q(i, c));
      if (ref) {
        for (std::size_t c = 0; c < problem.dim(); ++c) csv << "," << detail::format_number((*ref)(i, c));
        for (std::size_t c = 0; c < problem.dim(); ++c) {
          const double dev = sol.q(i, c) - (*ref)(i, c);
          csv << "," << detail::format_number(dev);
          max_dev = std::max(max_dev, std::abs(dev));
          max_ref = std::max(max_ref, std::abs((*ref)(i, c)));
        }
      }
      csv << "\n";
    }
    const fs::path solution_path = ctx.out_dir / "solution.csv";
    detail::write_text(solution_path, csv.str());
    d["solution"] = solution_path.filename().string();

    std::ostringstream lines;
    lines << (sol.converged ? "converged" : "NOT converged") << " after " << sol.iterations
          << " iterations, residual " << detail::format_number(sol.residual_norm()) << "\n";
    for (std::size_t j = 0; j < sol.lambda.lambda.size(); ++j) {
      lines << "lambda" << (j + 1) << " = " << detail::format_number(sol.lambda.lambda[j]) << "\n";
    }
    for (const std::string& w : sol.warnings) lines << "warning: " << w << "\n";
    if (ref) {
      json r;
      r["max_abs_deviation"] = number(max_dev);
      r["scaled_deviation"] = number(max_ref > 0.0 ? max_dev / max_ref : max_dev);
      if (const auto ref_lambda = spec::reference_lambda(ctx.spec)) {
        json dl = json::array();
        for (std::size_t j = 0; j < ref_lambda->lambda.size(); ++j) {
          dl.push_back(number(sol.lambda.lambda[j] - ref_lambda->lambda[j]));
        }
        r["lambda_deviation"] = dl;
      }
      d["reference"] = r;
      lines << "scaled deviation from reference " << detail::format_number(max_ref > 0.0 ? max_dev / max_ref : max_dev)
            << "\n";
    }
    if (!sol.converged) return finish(std::move(d), kComputationFailed, lines.str(), out);

    CheckList checks(ctx, d);
    checks.add_report("euler_lagrange", problems::euler_lagrange_residual(problem, sol.lambda, sol.q, ctx.spec.band));
    const std::vector<double> values = problems::constraint_values(problem, sol.q);
    for (std::size_t j = 0; j < values.size(); ++j) {
      checks.add_scalar("constraint_" + std::to_string(j + 1), values[j], problem.constraint_levels()[j]);
    }
    return finish(std::move(d), checks.all_passed() ? kPass : kResidualExceeded, lines.str() + checks.lines(), out);
  });
}

RunReport cmd_selftest(const SelftestOptions& options) {
  json doc = base_document("selftest", "");
  doc.erase("spec");
  const std::string out_dir = options.out_dir.value_or("");
  return guarded(std::move(doc), out_dir, [&](json& d, std::optional<fs::path>& out) {
    if (options.out_dir) {
      out = fs::path(*options.out_dir);
      std::error_code ec;
      fs::create_directories(*out, ec);
      if (ec) throw Error("cannot create output directory " + out->string());
    }
    const std::vector<detail::OracleResult> results = detail::run_oracles(options.corrupt_gamma);
    json list = json::array();
    std::ostringstream lines;
    bool all = true;
    for (const detail::OracleResult& r : results) {
      json o;
      o["name"] = r.name;
      o["measured"] = number(r.measured);
      o["tolerance"] = number(r.tolerance);
      o["passed"] = r.passed;
      list.push_back(o);
      all = all && r.passed;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%-4s  %-34s %12.4e  (tol %.1e)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.measured, r.tolerance);
      lines << buf;
    }
    d["oracles"] = list;
    return finish(std::move(d), all ? kPass : kResidualExceeded, lines.str(), out);
  });
}

}  // namespace fracnoether::cli
