#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = FRACNOETHER_SCRATCH;
const fs::path kSpecs = FRACNOETHER_SPECS;

int run(const std::string& args) {
  const std::string cmd = std::string(FRACNOETHER_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = kScratch / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_spec(const std::string& name, const std::string& text) {
  fs::create_directories(kScratch);
  const fs::path p = kScratch / name;
  std::ofstream(p) << text;
  return p;
}

std::string spec(const std::string& name) { return (kSpecs / name).string(); }

}  // namespace

TEST_CASE("check passes on the bundled examples") {
  const auto out = fresh_dir("check_ok");
  for (const char* which : {"el", "noether", "invariance", "hamiltonian"}) {
    CHECK(run(std::string("check --which ") + which + " --out " + out.string() + " " + spec("example1.spec")) == 0);
  }
  CHECK(run("check --which hamiltonian --out " + out.string() + " " + spec("example2.spec")) == 0);
  CHECK(run("check --which hamiltonian --out " + out.string() + " " + spec("example1_lift.spec")) == 0);
  CHECK(run("check --out " + out.string() + " " + spec("classical.spec")) == 0);
  const auto report = nlohmann::json::parse(slurp(out / "report.json"));
  CHECK(report["status"] == "pass");
  CHECK(report["checks"][0]["name"] == "euler_lagrange");
  CHECK(fs::exists(out / "euler_lagrange_profile.csv"));
}

TEST_CASE("non-autonomous control spec skips the energy law") {
  const auto out = fresh_dir("nonautonomous");
  const auto autonomy = write_spec("nonautonomous.spec",
                                   "kind = control\nalpha = 0.5\ninterval = 0, 1\ngrid = 20\ncontrols = 1\n"
                                   "L = t * u1^2\nphi1 = u1\ninitial = 0\ntraj.q1 = 0\ntraj.u1 = 0\ntraj.p1 = 0\n");
  CHECK(run("check --which hamiltonian --out " + out.string() + " " + autonomy.string()) == 0);
  const auto report = nlohmann::json::parse(slurp(out / "report.json"));
  CHECK(report["notes"].size() == 1);
}

TEST_CASE("wrong multiplier exits 1") {
  const auto out = fresh_dir("check_fail");
  CHECK(run("check --lambda 1 --out " + out.string() + " " + spec("example1.spec")) == 1);
  const auto report = nlohmann::json::parse(slurp(out / "report.json"));
  CHECK(report["status"] == "residual_exceeded");
  CHECK(report["exit_code"] == 1);
  CHECK(run("check --tol 1e-9 --out " + out.string() + " " + spec("example1.spec")) == 1);
}

TEST_CASE("computation failure exits 2") {
  const auto out = fresh_dir("solve_fail");
  const auto bad = write_spec("infeasible.spec",
                              "alpha = 1\ninterval = 0, 1\ngrid = 20\nL = v1^2\ng1 = sin(q1)\nl1 = 1e6\n"
                              "boundary_a = 0\nboundary_b = 0\n");
  CHECK(run("solve --max-iterations 5 --out " + out.string() + " " + bad.string()) == 2);
}

TEST_CASE("invalid input exits 3") {
  const auto out = fresh_dir("invalid");
  const auto bad = write_spec("bad.spec", "alpha = 0.5\ninterval = 0, 1\ngrid = 10\nL = v1^2 + nope\n");
  CHECK(run("check --out " + out.string() + " " + bad.string()) == 3);
  CHECK(run("check --out " + out.string() + " " + (kScratch / "missing.spec").string()) == 3);
  CHECK(run("check --which nonsense " + spec("example1.spec")) == 3);
  CHECK(run("check --alpha 2 --out " + out.string() + " " + spec("example1.spec")) == 3);
  CHECK(run("check --which momentum --out " + out.string() + " " + spec("example1.spec")) == 3);
  CHECK(run("solve --out " + out.string() + " " + spec("example2.spec")) == 3);
  CHECK(run("solve --max-iterations 0 " + spec("example1.spec")) == 3);
  CHECK(run("frobnicate") == 3);
  CHECK(run("") == 3);
  CHECK(run("--help") == 0);
}

TEST_CASE("solve writes a solution and a report") {
  const auto out = fresh_dir("solve_ok");
  CHECK(run("solve --grid 200 --out " + out.string() + " " + spec("example1.spec")) == 0);
  const auto report = nlohmann::json::parse(slurp(out / "report.json"));
  CHECK(report["solver"]["converged"] == true);
  CHECK(std::abs(report["solver"]["lambda"][0].get<double>() - 2.0) < 0.05);
  CHECK(report["reference"]["scaled_deviation"].get<double>() < 5e-3);
  const std::string csv = slurp(out / "solution.csv");
  CHECK(csv.rfind("t,q1,ref1,dev1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 202);
}

TEST_CASE("outputs are byte-identical across runs") {
  const auto a = fresh_dir("det_a");
  const auto b = fresh_dir("det_b");
  for (const fs::path& dir : {a, b}) {
    REQUIRE(run("solve --grid 120 --out " + dir.string() + " " + spec("example1.spec")) == 0);
  }
  for (const char* file : {"report.json", "solution.csv", "euler_lagrange_profile.csv"}) {
    CHECK(slurp(a / file) == slurp(b / file));
  }
  for (const fs::path& dir : {a, b}) {
    REQUIRE(run("check --which hamiltonian --out " + dir.string() + " " + spec("example2.spec")) == 0);
  }
  for (const char* file : {"report.json", "pontryagin_state_profile.csv", "autonomous_energy_profile.csv"}) {
    CHECK(slurp(a / file) == slurp(b / file));
  }
}

TEST_CASE("selftest passes and detects a corrupted gamma function") {
  const auto out = fresh_dir("selftest");
  CHECK(run("selftest --out " + out.string()) == 0);
  CHECK(nlohmann::json::parse(slurp(out / "report.json"))["status"] == "pass");
  CHECK(run("selftest --corrupt-gamma") == 1);
}
