#include <doctest.h>

#include <cmath>

#include "fracnoether/errors.hpp"
#include "fracnoether/problems.hpp"
#include "fracnoether/spec_file.hpp"
#include "oracles.hpp"

using namespace fracnoether;
using spec::parse_spec_text;

namespace {

const char* kExample1 = R"(
kind = variational
alpha = 0.5
interval = 0, 1
grid = 200
L = t^4 + v1^2
g1 = t^2 * v1
l1 = 1/5
boundary_a = 0
boundary_b = 2 / gamma(alpha + 3)
lambda = 2
traj.q1 = 2 * t^(alpha + 2) / gamma(alpha + 3)
gen.tau = 1
gen.xi1 = 1
)";

int error_line(const std::string& text) {
  try {
    parse_spec_text(text);
  } catch (const SpecError& err) {
    return static_cast<int>(err.line());
  }
  return -1;
}

}  // namespace

TEST_CASE("example 1 spec builds the same problem as the hand-written one") {
  const auto s = parse_spec_text(kExample1);
  CHECK(s.kind == spec::ProblemKind::kVariational);
  CHECK(s.grid == 200);
  const auto problem = spec::variational_problem(s);
  const auto reference = oracle::example1(0.5, 200);
  CHECK(problem.boundary_b()[0] == doctest::Approx(reference.boundary_b()[0]));
  const auto q = spec::trajectory_q(s);
  const auto el = problems::euler_lagrange_residual(problem, spec::multipliers(s), q);
  const auto el_ref = problems::euler_lagrange_residual(reference, {{2.0}}, q);
  CHECK(el.sup_norm == doctest::Approx(el_ref.sup_norm).epsilon(1e-10));
  CHECK(spec::has_generator(s));
  const double qv[] = {0.0};
  CHECK(spec::generator(s).tau(0.3, qv) == 1.0);
}

TEST_CASE("overrides re-validate") {
  const auto s = parse_spec_text(kExample1);
  const auto t = s.with_overrides(0.8, 50);
  CHECK(t.alpha == 0.8);
  CHECK(spec::make_grid(t).m() == 50);
  CHECK(spec::variational_problem(t).boundary_b()[0] == doctest::Approx(2.0 / std::tgamma(3.8)));
  CHECK_THROWS_AS(s.with_overrides(1.5, std::nullopt), SpecError);
  CHECK_THROWS_AS(s.with_overrides(std::nullopt, 2), SpecError);
  CHECK_THROWS_AS(s.with_lambda({1.0, 2.0}), SpecError);
  CHECK(spec::multipliers(s.with_lambda({3.0})).lambda[0] == 3.0);
}

TEST_CASE("malformed specs report the offending line") {
  CHECK_THROWS_AS(parse_spec_text(""), SpecError);
  CHECK(error_line("alpha = 0.5\ninterval = 0, 1\ngrid = 10\nL = v1^2\nboundary_a = 0\nboundary_b = 1\nbogus = 3\n") == 7);
  CHECK(error_line("alpha = 0.5\nalpha = 0.6\n") == 2);
  CHECK(error_line("alpha = 0.5\ninterval = 0, 1\ngrid = 10\nL = v1^2 + w\nboundary_a = 0\nboundary_b = 1\n") == 4);
  CHECK(error_line("alpha = 1.5\n") == 1);
  CHECK(error_line("this line has no equals sign\n") == 1);
  CHECK(error_line("alpha = 0.5\ninterval = 1, 0\n") == 2);
  CHECK_THROWS_WITH_AS(parse_spec_text("alpha = 0.5\ninterval = 0, 1\ngrid = 10\nL = v1^2\ng1 = q1\nboundary_a = 0\n"
                                       "boundary_b = 1\n"),
                       doctest::Contains("dimension"), SpecError);
}

TEST_CASE("control spec and field variables") {
  const auto s = parse_spec_text(R"(
kind = control
alpha = 0.5
interval = 0, 1
grid = 100
controls = 1
L = u1^2 + 1
phi1 = u1
g1 = u1
l1 = 1
initial = 0
lambda = 2
traj.q1 = t^alpha / gamma(alpha + 1)
traj.u1 = 1
traj.p1 = 0
)");
  CHECK(s.kind == spec::ProblemKind::kControl);
  CHECK(spec::field_variables(s) == std::vector<std::string>{"t", "q1", "u1"});
  const auto cp = spec::control_problem(s);
  CHECK(cp.control_dim() == 1);
  CHECK(hamiltonian::is_autonomous(cp));
  CHECK(spec::trajectory_u(s)(5) == 1.0);
}

TEST_CASE("sampled trajectories and missing pieces") {
  const auto s = parse_spec_text(R"(
alpha = 1
interval = 0, 1
grid = 4
band = 1
L = v1^2
boundary_a = 0
boundary_b = 1
traj.q1.samples = 0, 0.25, 0.5, 0.75, 1
)");
  const auto q = spec::trajectory_q(s);
  CHECK(q(2) == 0.5);
  CHECK(spec::multipliers(s).lambda.empty());
  CHECK_FALSE(spec::reference_q(s).has_value());
  CHECK_THROWS_AS(parse_spec_text("alpha = 1\ninterval = 0, 1\ngrid = 4\nL = v1^2\nboundary_a = 0\nboundary_b = 1\n"
                                  "traj.q1.samples = 0, 1\n"),
                  SpecError);
}
