#include "fracnoether/spec_file.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "fracnoether/errors.hpp"
#include "fracnoether/expression.hpp"
#include "fracnoether/gamma.hpp"

namespace fracnoether::spec {
namespace {

constexpr std::size_t kMinGrid = 4;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::map<std::string, double> constants(double alpha) { return {{"alpha", alpha}, {"pi", std::numbers::pi}}; }

double constant_value(const Entry& e, double alpha, const std::string& key) {
  try {
    const expr::Expression x = expr::Expression::parse(e.value, {}, constants(alpha));
    const double v = x.evaluate({});
    if (!std::isfinite(v)) throw SpecError(key + " does not evaluate to a finite number", e.line);
    return v;
  } catch (const ParseError& err) {
    throw SpecError(key + ": " + err.what(), e.line);
  } catch (const PoleError& err) {
    throw SpecError(key + ": " + err.what(), e.line);
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (char c : value) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(trim(current));
  return parts;
}

std::vector<double> constant_list(const Entry& e, double alpha, const std::string& key) {
  std::vector<double> out;
  for (const std::string& part : split_list(e.value)) {
    if (part.empty()) throw SpecError(key + " has an empty list element", e.line);
    out.push_back(constant_value({part, e.line}, alpha, key));
  }
  return out;
}

std::size_t count_value(const Entry& e, double alpha, const std::string& key) {
  const double v = constant_value(e, alpha, key);
  if (v < 0.0 || v != std::floor(v) || v > 1e9) throw SpecError(key + " must be a nonnegative integer", e.line);
  return static_cast<std::size_t>(v);
}

expr::Expression parse_expression(const Entry& e, const std::vector<std::string>& variables, double alpha,
                                  const std::string& key) {
  try {
    return expr::Expression::parse(e.value, variables, constants(alpha));
  } catch (const ParseError& err) {
    throw SpecError(key + ": " + err.what(), e.line);
  }
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<std::string> time_state_variables(std::size_t n) {
  std::vector<std::string> vars{"t"};
  for (const std::string& q : numbered("q", n)) vars.push_back(q);
  return vars;
}

std::vector<std::string> control_variables(std::size_t n, std::size_t m) {
  std::vector<std::string> vars = time_state_variables(n);
  for (const std::string& u : numbered("u", m)) vars.push_back(u);
  for (const std::string& p : numbered("p", n)) vars.push_back(p);
  return vars;
}

// Splits "g12" into ("g", 12); index 0 when there is no numeric suffix.
std::pair<std::string, std::size_t> split_index(const std::string& key) {
  std::size_t pos = key.size();
  while (pos > 0 && std::isdigit(static_cast<unsigned char>(key[pos - 1]))) --pos;
  if (pos == key.size() || pos == 0) return {key, 0};
  const std::string digits = key.substr(pos);
  if (digits[0] == '0') return {key, 0};
  return {key.substr(0, pos), static_cast<std::size_t>(std::stoul(digits))};
}

using Indexed = std::map<std::size_t, Entry>;

std::vector<Entry> contiguous(const Indexed& items, const std::string& prefix) {
  std::vector<Entry> out;
  std::size_t expected = 1;
  for (const auto& [index, entry] : items) {
    if (index != expected) {
      throw SpecError(prefix + std::to_string(expected) + " is missing (found " + prefix + std::to_string(index) + ")",
                      entry.line);
    }
    out.push_back(entry);
    ++expected;
  }
  return out;
}

// Dense vector with one slot per index 1..size; absent indices stay empty.
std::vector<Entry> sparse(const Indexed& items, const std::string& prefix, std::size_t size) {
  std::vector<Entry> out(size);
  for (const auto& [index, entry] : items) {
    if (index > size) {
      throw SpecError(prefix + std::to_string(index) + " exceeds the dimension " + std::to_string(size), entry.line);
    }
    out[index - 1] = entry;
  }
  return out;
}

struct RawSpec {
  std::map<std::string, Entry> scalars;
  std::map<std::string, Indexed> indexed;
  Indexed samples;
};

const std::vector<std::string>& scalar_keys() {
  static const std::vector<std::string> keys = {
      "kind",         "alpha",       "interval",       "grid",          "dim",          "controls", "L",
      "lambda",       "boundary_a",  "boundary_b",     "initial",       "band",         "tol_constant",
      "gen.tau",      "traj.builtin", "reference.lambda"};
  return keys;
}

const std::vector<std::string>& indexed_prefixes() {
  static const std::vector<std::string> prefixes = {"g",          "l",         "phi",      "gen.xi",
                                                    "gen.rho",    "gen.sigma", "traj.q",   "traj.u",
                                                    "traj.p",     "reference.q"};
  return prefixes;
}

RawSpec read_entries(const std::string& text) {
  RawSpec raw;
  std::map<std::string, std::size_t> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError("expected 'key = value'", number);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw SpecError("missing key before '='", number);
    if (value.empty()) throw SpecError(key + " has an empty value", number);
    if (const auto it = seen.find(key); it != seen.end()) {
      throw SpecError("duplicate key " + key + " (first given on line " + std::to_string(it->second) + ")", number);
    }
    seen[key] = number;
    const Entry entry{value, number};

    if (std::find(scalar_keys().begin(), scalar_keys().end(), key) != scalar_keys().end()) {
      raw.scalars[key] = entry;
      continue;
    }
    const std::string samples_suffix = ".samples";
    if (key.size() > samples_suffix.size() &&
        key.compare(key.size() - samples_suffix.size(), samples_suffix.size(), samples_suffix) == 0) {
      const auto [prefix, index] = split_index(key.substr(0, key.size() - samples_suffix.size()));
      if (prefix == "traj.q" && index > 0) {
        raw.samples[index] = entry;
        continue;
      }
    }
    const auto [prefix, index] = split_index(key);
    if (index > 0 &&
        std::find(indexed_prefixes().begin(), indexed_prefixes().end(), prefix) != indexed_prefixes().end()) {
      raw.indexed[prefix][index] = entry;
      continue;
    }
    throw SpecError("unknown key " + key, number);
  }
  if (seen.empty()) throw SpecError("specification is empty", 0);
  return raw;
}

const Entry& required(const RawSpec& raw, const std::string& key) {
  const auto it = raw.scalars.find(key);
  if (it == raw.scalars.end()) throw SpecError("missing required key " + key, 0);
  return it->second;
}

std::optional<Entry> optional_entry(const RawSpec& raw, const std::string& key) {
  const auto it = raw.scalars.find(key);
  if (it == raw.scalars.end()) return std::nullopt;
  return it->second;
}

const Indexed& indexed(const RawSpec& raw, const std::string& prefix) {
  static const Indexed empty;
  const auto it = raw.indexed.find(prefix);
  return it == raw.indexed.end() ? empty : it->second;
}

void check_list_size(const std::optional<Entry>& e, std::size_t expected, double alpha, const std::string& key) {
  if (!e) return;
  const std::size_t got = constant_list(*e, alpha, key).size();
  if (got != expected) {
    throw SpecError(key + " has " + std::to_string(got) + " values, expected " + std::to_string(expected), e->line);
  }
}

void check_expressions(const std::vector<Entry>& entries, const std::vector<std::string>& variables, double alpha,
                       const std::string& prefix) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].value.empty()) parse_expression(entries[i], variables, alpha, prefix + std::to_string(i + 1));
  }
}

// Checks that depend on alpha or the grid; run after parsing and after overrides.
void validate(const ProblemSpec& s) {
  if (!(s.alpha > 0.0 && s.alpha <= 1.0)) throw SpecError("alpha must lie in (0, 1]", 0);
  if (!(s.a < s.b)) throw SpecError("interval must satisfy a < b", 0);
  if (s.grid < kMinGrid) throw SpecError("grid must be at least " + std::to_string(kMinGrid), 0);
  if (2 * s.band >= s.grid) throw SpecError("band is too wide for the grid", 0);
  if (!(s.tol_constant > 0.0)) throw SpecError("tol_constant must be positive", 0);
  const bool control = s.kind == ProblemKind::kControl;

  if (s.constraints.size() != s.levels.size()) {
    throw SpecError("dimension error: " + std::to_string(s.constraints.size()) + " constraints (g) but " +
                        std::to_string(s.levels.size()) + " levels (l)",
                    s.levels.empty() ? s.constraints.front().line : s.levels.front().line);
  }
  for (std::size_t j = 0; j < s.levels.size(); ++j) constant_value(s.levels[j], s.alpha, "l" + std::to_string(j + 1));

  const std::vector<std::string> vars = field_variables(s);
  check_expressions({s.lagrangian}, vars, s.alpha, "L");
  check_expressions(s.constraints, vars, s.alpha, "g");

  if (control) {
    if (s.controls == 0) throw SpecError("control problems need controls >= 1", 0);
    if (s.dynamics.size() != s.dim) {
      throw SpecError("dimension error: " + std::to_string(s.dynamics.size()) + " dynamics (phi) for dim " +
                          std::to_string(s.dim),
                      s.dynamics.empty() ? 0 : s.dynamics.front().line);
    }
    check_expressions(s.dynamics, vars, s.alpha, "phi");
    if (!s.initial) throw SpecError("control problems need initial", 0);
    check_list_size(s.initial, s.dim, s.alpha, "initial");
    if (s.boundary_a || s.boundary_b) {
      throw SpecError("boundary_a/boundary_b apply to variational problems; use initial",
                      s.boundary_a ? s.boundary_a->line : s.boundary_b->line);
    }
  } else {
    if (!s.dynamics.empty()) throw SpecError("phi applies to control problems only", s.dynamics.front().line);
    if (s.controls != 0) throw SpecError("controls applies to control problems only", 0);
    if (s.initial) throw SpecError("initial applies to control problems; use boundary_a", s.initial->line);
    if (!s.boundary_a || !s.boundary_b) throw SpecError("variational problems need boundary_a and boundary_b", 0);
    check_list_size(s.boundary_a, s.dim, s.alpha, "boundary_a");
    check_list_size(s.boundary_b, s.dim, s.alpha, "boundary_b");
    if (!s.rho.empty() || !s.sigma.empty()) throw SpecError("gen.rho/gen.sigma apply to control problems only", 0);
  }
  check_list_size(s.lambda, s.constraints.size(), s.alpha, "lambda");
  check_list_size(s.reference_lambda, s.constraints.size(), s.alpha, "reference.lambda");

  const std::vector<std::string> gen_vars = time_state_variables(s.dim);
  if (s.tau) parse_expression(*s.tau, gen_vars, s.alpha, "gen.tau");
  check_expressions(s.xi, gen_vars, s.alpha, "gen.xi");
  const std::vector<std::string> all = control_variables(s.dim, s.controls);
  check_expressions(s.rho, all, s.alpha, "gen.rho");
  check_expressions(s.sigma, all, s.alpha, "gen.sigma");

  const TrajectorySpec& tr = s.trajectory;
  const std::vector<std::string> t_only{"t"};
  if (tr.builtin) {
    if (tr.builtin->value != "example1") throw SpecError("unknown built-in trajectory " + tr.builtin->value, tr.builtin->line);
    if (s.dim != 1) throw SpecError("built-in example1 is one-dimensional", tr.builtin->line);
    if (control && s.controls != 1) throw SpecError("built-in example1 has one control", tr.builtin->line);
    if (!tr.q.empty() || !tr.q_samples.empty() || !tr.u.empty() || !tr.p.empty()) {
      throw SpecError("traj.builtin cannot be combined with other traj.* keys", tr.builtin->line);
    }
  } else if (tr.present() || !tr.u.empty() || !tr.p.empty()) {
    const bool have_expr = !tr.q.empty();
    const bool have_samples = !tr.q_samples.empty();
    if (have_expr && have_samples) throw SpecError("give traj.q either as expressions or as samples", 0);
    if (!have_expr && !have_samples) throw SpecError("trajectory needs traj.q entries", 0);
    const std::vector<Entry>& q = have_expr ? tr.q : tr.q_samples;
    if (q.size() != s.dim) {
      throw SpecError("trajectory has " + std::to_string(q.size()) + " components, expected " + std::to_string(s.dim),
                      q.front().line);
    }
    if (have_expr) check_expressions(tr.q, t_only, s.alpha, "traj.q");
    for (std::size_t c = 0; c < tr.q_samples.size(); ++c) {
      const std::string key = "traj.q" + std::to_string(c + 1) + ".samples";
      const std::size_t got = constant_list(tr.q_samples[c], s.alpha, key).size();
      if (got != s.grid + 1) {
        throw SpecError(key + " has " + std::to_string(got) + " values but the grid has " +
                            std::to_string(s.grid + 1) + " nodes",
                        tr.q_samples[c].line);
      }
    }
    if (control) {
      if (tr.u.size() != s.controls || tr.p.size() != s.dim) {
        throw SpecError("control trajectories need traj.u1..u" + std::to_string(s.controls) + " and traj.p1..p" +
                            std::to_string(s.dim),
                        q.front().line);
      }
      check_expressions(tr.u, t_only, s.alpha, "traj.u");
      check_expressions(tr.p, t_only, s.alpha, "traj.p");
    } else if (!tr.u.empty() || !tr.p.empty()) {
      throw SpecError("traj.u/traj.p apply to control problems only", 0);
    }
  }
  if (!s.reference_q.empty()) {
    if (s.reference_q.size() != s.dim) throw SpecError("reference.q needs one entry per component", s.reference_q.front().line);
    check_expressions(s.reference_q, t_only, s.alpha, "reference.q");
  }
}

SampledFunction sample_expressions(const std::vector<Entry>& entries, const ProblemSpec& s, const std::string& key) {
  const Grid grid = make_grid(s);
  SampledFunction out(grid, entries.size());
  for (std::size_t c = 0; c < entries.size(); ++c) {
    const expr::Expression x = parse_expression(entries[c], {"t"}, s.alpha, key + std::to_string(c + 1));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = grid.node(i);
      out(i, c) = x.evaluate(std::span<const double>(&t, 1));
    }
  }
  return out;
}

double example1_state(double t, double alpha) { return 2.0 * std::pow(t, alpha + 2.0) / gamma(alpha + 3.0); }

// Integrand over (t, q, w) where w is v (variational) or u (control).
ScalarField3 compile_field(const Entry& e, const ProblemSpec& s, const std::string& key) {
  const std::size_t n = s.dim;
  const std::vector<std::string> vars = field_variables(s);
  const std::size_t w = vars.size() - 1 - n;
  const expr::Expression value = parse_expression(e, vars, s.alpha, key);

  std::vector<expr::Expression> dq, dw;
  bool analytic_q = true;
  bool analytic_w = true;
  for (std::size_t i = 0; i < n; ++i) {
    auto d = value.derivative(1 + i);
    if (!d) {
      analytic_q = false;
      break;
    }
    dq.push_back(*d);
  }
  for (std::size_t i = 0; i < w; ++i) {
    auto d = value.derivative(1 + n + i);
    if (!d) {
      analytic_w = false;
      break;
    }
    dw.push_back(*d);
  }

  constexpr std::size_t kStack = 32;
  auto load = [n, w](double t, std::span<const double> q, std::span<const double> v, std::array<double, kStack>& buf,
                     std::vector<double>& heap) -> std::span<const double> {
    if (q.size() != n || v.size() != w) throw DimensionMismatch("integrand called with wrong dimensions");
    const std::size_t size = 1 + n + w;
    double* data = buf.data();
    if (size > kStack) {
      heap.resize(size);
      data = heap.data();
    }
    data[0] = t;
    std::copy(q.begin(), q.end(), data + 1);
    std::copy(v.begin(), v.end(), data + 1 + n);
    return {data, size};
  };

  ScalarField3::Value f = [value, load](double t, std::span<const double> q, std::span<const double> v) {
    std::array<double, kStack> buf;
    std::vector<double> heap;
    return value.evaluate(load(t, q, v, buf, heap));
  };
  auto gradient = [load](std::vector<expr::Expression> parts) -> ScalarField3::Gradient {
    return [parts = std::move(parts), load](double t, std::span<const double> q, std::span<const double> v,
                                            std::span<double> out) {
      if (out.size() != parts.size()) throw DimensionMismatch("gradient output has wrong length");
      std::array<double, kStack> buf;
      std::vector<double> heap;
      const auto values = load(t, q, v, buf, heap);
      for (std::size_t i = 0; i < parts.size(); ++i) out[i] = parts[i].evaluate(values);
    };
  };
  std::optional<ScalarField3::Gradient> gq;
  std::optional<ScalarField3::Gradient> gw;
  if (analytic_q) gq = gradient(std::move(dq));
  if (analytic_w) gw = gradient(std::move(dw));
  return ScalarField3(std::move(f), std::move(gq), std::move(gw));
}

std::vector<ScalarField3> compile_fields(const std::vector<Entry>& entries, const ProblemSpec& s,
                                         const std::string& prefix) {
  std::vector<ScalarField3> out;
  for (std::size_t j = 0; j < entries.size(); ++j) out.push_back(compile_field(entries[j], s, prefix + std::to_string(j + 1)));
  return out;
}

std::vector<double> levels(const ProblemSpec& s) {
  std::vector<double> out;
  for (std::size_t j = 0; j < s.levels.size(); ++j) out.push_back(constant_value(s.levels[j], s.alpha, "l" + std::to_string(j + 1)));
  return out;
}

}  // namespace

ProblemSpec parse_spec_text(const std::string& text, const std::string& origin) {
  const RawSpec raw = read_entries(text);
  ProblemSpec s;
  s.origin = origin;

  if (const auto kind = optional_entry(raw, "kind")) {
    if (kind->value == "variational") {
      s.kind = ProblemKind::kVariational;
    } else if (kind->value == "control") {
      s.kind = ProblemKind::kControl;
    } else {
      throw SpecError("kind must be 'variational' or 'control'", kind->line);
    }
  }
  const Entry& alpha = required(raw, "alpha");
  try {
    s.alpha = expr::Expression::parse(alpha.value, {}, {{"pi", std::numbers::pi}}).evaluate({});
  } catch (const ParseError& err) {
    throw SpecError(std::string("alpha: ") + err.what(), alpha.line);
  }
  if (!(s.alpha > 0.0 && s.alpha <= 1.0)) throw SpecError("alpha must lie in (0, 1]", alpha.line);

  const Entry& interval = required(raw, "interval");
  const std::vector<double> ab = constant_list(interval, s.alpha, "interval");
  if (ab.size() != 2) throw SpecError("interval needs two values 'a, b'", interval.line);
  s.a = ab[0];
  s.b = ab[1];
  if (!(s.a < s.b)) throw SpecError("interval must satisfy a < b", interval.line);

  const Entry& grid = required(raw, "grid");
  s.grid = count_value(grid, s.alpha, "grid");
  if (s.grid < kMinGrid) throw SpecError("grid must be at least " + std::to_string(kMinGrid), grid.line);
  if (const auto dim = optional_entry(raw, "dim")) {
    s.dim = count_value(*dim, s.alpha, "dim");
    if (s.dim == 0) throw SpecError("dim must be positive", dim->line);
  }
  if (const auto controls = optional_entry(raw, "controls")) s.controls = count_value(*controls, s.alpha, "controls");
  if (const auto band = optional_entry(raw, "band")) s.band = count_value(*band, s.alpha, "band");
  if (const auto tol = optional_entry(raw, "tol_constant")) {
    s.tol_constant = constant_value(*tol, s.alpha, "tol_constant");
    if (!(s.tol_constant > 0.0)) throw SpecError("tol_constant must be positive", tol->line);
  }

  s.lagrangian = required(raw, "L");
  s.constraints = contiguous(indexed(raw, "g"), "g");
  s.levels = contiguous(indexed(raw, "l"), "l");
  s.dynamics = contiguous(indexed(raw, "phi"), "phi");
  s.boundary_a = optional_entry(raw, "boundary_a");
  s.boundary_b = optional_entry(raw, "boundary_b");
  s.initial = optional_entry(raw, "initial");
  s.lambda = optional_entry(raw, "lambda");

  s.tau = optional_entry(raw, "gen.tau");
  s.xi = sparse(indexed(raw, "gen.xi"), "gen.xi", s.dim);
  if (!indexed(raw, "gen.rho").empty() && s.controls == 0) throw SpecError("gen.rho needs controls", indexed(raw, "gen.rho").begin()->second.line);
  s.rho = sparse(indexed(raw, "gen.rho"), "gen.rho", s.controls);
  s.sigma = sparse(indexed(raw, "gen.sigma"), "gen.sigma", s.dim);
  if (indexed(raw, "gen.xi").empty()) s.xi.clear();
  if (indexed(raw, "gen.rho").empty()) s.rho.clear();
  if (indexed(raw, "gen.sigma").empty()) s.sigma.clear();

  s.trajectory.q = contiguous(indexed(raw, "traj.q"), "traj.q");
  s.trajectory.u = contiguous(indexed(raw, "traj.u"), "traj.u");
  s.trajectory.p = contiguous(indexed(raw, "traj.p"), "traj.p");
  s.trajectory.q_samples = contiguous(raw.samples, "traj.q");
  s.trajectory.builtin = optional_entry(raw, "traj.builtin");
  s.reference_q = contiguous(indexed(raw, "reference.q"), "reference.q");
  s.reference_lambda = optional_entry(raw, "reference.lambda");

  validate(s);
  return s;
}

ProblemSpec parse_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read specification file " + path, 0);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_spec_text(text.str(), path);
}

ProblemSpec ProblemSpec::with_overrides(std::optional<double> new_alpha, std::optional<std::size_t> new_grid) const {
  ProblemSpec s = *this;
  if (new_alpha) s.alpha = *new_alpha;
  if (new_grid) s.grid = *new_grid;
  validate(s);
  return s;
}

ProblemSpec ProblemSpec::with_lambda(const std::vector<double>& values) const {
  ProblemSpec s = *this;
  std::ostringstream text;
  text.precision(17);
  for (std::size_t j = 0; j < values.size(); ++j) text << (j ? ", " : "") << values[j];
  s.lambda = Entry{text.str(), 0};
  validate(s);
  return s;
}

Grid make_grid(const ProblemSpec& spec) { return Grid(spec.a, spec.b, spec.grid); }
FracOrder make_order(const ProblemSpec& spec) { return FracOrder(spec.alpha); }

std::vector<std::string> field_variables(const ProblemSpec& spec) {
  std::vector<std::string> vars = time_state_variables(spec.dim);
  const bool control = spec.kind == ProblemKind::kControl;
  for (const std::string& w : numbered(control ? "u" : "v", control ? spec.controls : spec.dim)) vars.push_back(w);
  return vars;
}

problems::VariationalProblem variational_problem(const ProblemSpec& spec) {
  if (spec.kind != ProblemKind::kVariational) throw SpecError("specification is not a variational problem", 0);
  return problems::VariationalProblem(make_order(spec), compile_field(spec.lagrangian, spec, "L"),
                                      compile_fields(spec.constraints, spec, "g"), levels(spec),
                                      constant_list(*spec.boundary_a, spec.alpha, "boundary_a"),
                                      constant_list(*spec.boundary_b, spec.alpha, "boundary_b"), make_grid(spec));
}

hamiltonian::ControlProblem control_problem(const ProblemSpec& spec) {
  if (spec.kind != ProblemKind::kControl) throw SpecError("specification is not a control problem", 0);
  return hamiltonian::ControlProblem(make_order(spec), compile_field(spec.lagrangian, spec, "L"),
                                     compile_fields(spec.dynamics, spec, "phi"),
                                     compile_fields(spec.constraints, spec, "g"), levels(spec),
                                     constant_list(*spec.initial, spec.alpha, "initial"), spec.controls,
                                     make_grid(spec));
}

problems::Multipliers multipliers(const ProblemSpec& spec) {
  if (spec.constraints.empty()) return {};
  if (!spec.lambda) throw SpecError("the check needs lambda for the " + std::to_string(spec.constraints.size()) +
                                        " constraint(s)", 0);
  return {constant_list(*spec.lambda, spec.alpha, "lambda")};
}

bool has_generator(const ProblemSpec& spec) { return spec.tau.has_value() || !spec.xi.empty(); }

noether::SymmetryGenerator generator(const ProblemSpec& spec) {
  const std::vector<std::string> vars = time_state_variables(spec.dim);
  const std::size_t n = spec.dim;
  const expr::Expression tau = spec.tau ? parse_expression(*spec.tau, vars, spec.alpha, "gen.tau")
                                        : expr::Expression::constant(0.0);
  std::vector<expr::Expression> xi;
  for (std::size_t c = 0; c < n; ++c) {
    const bool given = c < spec.xi.size() && !spec.xi[c].value.empty();
    xi.push_back(given ? parse_expression(spec.xi[c], vars, spec.alpha, "gen.xi" + std::to_string(c + 1))
                       : expr::Expression::constant(0.0));
  }
  auto pack = [n](double t, std::span<const double> q) {
    if (q.size() != n) throw DimensionMismatch("generator called with wrong dimension");
    std::vector<double> values{t};
    values.insert(values.end(), q.begin(), q.end());
    return values;
  };
  return {[tau, pack](double t, std::span<const double> q) { return tau.evaluate(pack(t, q)); },
          [xi, pack](double t, std::span<const double> q, std::span<double> out) {
            if (out.size() != xi.size()) throw DimensionMismatch("generator output has wrong dimension");
            const std::vector<double> values = pack(t, q);
            for (std::size_t c = 0; c < xi.size(); ++c) out[c] = xi[c].evaluate(values);
          }};
}

hamiltonian::ControlSymmetry control_symmetry(const ProblemSpec& spec) {
  hamiltonian::ControlSymmetry sym = hamiltonian::ControlSymmetry::zero();
  sym.generator = generator(spec);
  const std::vector<std::string> vars = control_variables(spec.dim, spec.controls);
  auto compile = [&](const std::vector<Entry>& entries, std::size_t size, const std::string& prefix) {
    std::vector<expr::Expression> parts;
    for (std::size_t c = 0; c < size; ++c) {
      const bool given = c < entries.size() && !entries[c].value.empty();
      parts.push_back(given ? parse_expression(entries[c], vars, spec.alpha, prefix + std::to_string(c + 1))
                            : expr::Expression::constant(0.0));
    }
    return [parts](double t, std::span<const double> q, std::span<const double> u, std::span<const double> p,
                   std::span<double> out) {
      std::vector<double> values{t};
      values.insert(values.end(), q.begin(), q.end());
      values.insert(values.end(), u.begin(), u.end());
      values.insert(values.end(), p.begin(), p.end());
      for (std::size_t c = 0; c < parts.size(); ++c) out[c] = parts[c].evaluate(values);
    };
  };
  sym.rho = compile(spec.rho, spec.controls, "gen.rho");
  sym.sigma = compile(spec.sigma, spec.dim, "gen.sigma");
  return sym;
}

SampledFunction trajectory_q(const ProblemSpec& spec) {
  const TrajectorySpec& tr = spec.trajectory;
  if (!tr.present()) throw SpecError("the check needs a candidate trajectory (traj.*)", 0);
  const Grid grid = make_grid(spec);
  if (tr.builtin) {
    return SampledFunction::from_function(grid, [&](double t) { return example1_state(t - spec.a, spec.alpha); });
  }
  if (!tr.q.empty()) return sample_expressions(tr.q, spec, "traj.q");
  SampledFunction q(grid, spec.dim);
  for (std::size_t c = 0; c < spec.dim; ++c) {
    const std::vector<double> column =
        constant_list(tr.q_samples[c], spec.alpha, "traj.q" + std::to_string(c + 1) + ".samples");
    q.set_component(c, column);
  }
  return q;
}

SampledFunction trajectory_u(const ProblemSpec& spec) {
  const TrajectorySpec& tr = spec.trajectory;
  if (tr.builtin) {
    return SampledFunction::from_function(make_grid(spec), [&](double t) { return (t - spec.a) * (t - spec.a); });
  }
  if (tr.u.empty()) throw SpecError("the check needs traj.u entries", 0);
  return sample_expressions(tr.u, spec, "traj.u");
}

SampledFunction trajectory_p(const ProblemSpec& spec) {
  const TrajectorySpec& tr = spec.trajectory;
  if (tr.builtin) return SampledFunction(make_grid(spec), 1);
  if (tr.p.empty()) throw SpecError("the check needs traj.p entries", 0);
  return sample_expressions(tr.p, spec, "traj.p");
}

std::optional<SampledFunction> reference_q(const ProblemSpec& spec) {
  if (spec.reference_q.empty()) return std::nullopt;
  return sample_expressions(spec.reference_q, spec, "reference.q");
}

std::optional<problems::Multipliers> reference_lambda(const ProblemSpec& spec) {
  if (!spec.reference_lambda) return std::nullopt;
  return problems::Multipliers{constant_list(*spec.reference_lambda, spec.alpha, "reference.lambda")};
}

}  // namespace fracnoether::spec
