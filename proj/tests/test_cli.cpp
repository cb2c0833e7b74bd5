#include <cstdlib>
#include <fstream>
#include <sstream>

#include "certificate.hpp"
#include "doctest.h"
#include "suite.hpp"
#include "tasks.hpp"

using namespace mfg;
using namespace mfg::cli;

namespace {

namespace fs = std::filesystem;

const fs::path kBinary = MFG_BINARY;
const fs::path kConfigs = MFG_CONFIGS;

struct Run {
  int code;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("mfg-cli-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

/// Runs the mfg binary with the given arguments from inside `dir`.
Run invoke(const fs::path& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && '" + kBinary.string() + "' " + args + " > stdout.txt 2> stderr.txt";
  int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(dir / "stdout.txt"), slurp(dir / "stderr.txt")};
  fs::remove(dir / "stdout.txt");
  fs::remove(dir / "stderr.txt");
  return r;
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

void write_json(const fs::path& p, const Json& j) { write_atomic(p, dump(j)); }

const std::string kA1 = (kConfigs / "a1_sign_action.json").string();
const std::string kX4 = (kConfigs / "x4.json").string();

}  // namespace

TEST_CASE("every operation runs and its report verifies") {
  fs::path dir = scratch("ops");
  Run r = invoke(dir, "--out reports run " + kA1 + " validate decompose hom induce split strictify extend");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  Run k = invoke(dir, "--out reports kstab " + kX4);
  REQUIRE_MESSAGE(k.code == 0, k.err);
  for (const char* task : {"validate", "decompose", "hom", "induce", "split", "strictify", "extend", "kstab"}) {
    CAPTURE(task);
    const fs::path report = dir / "reports" / (std::string(task) + ".json");
    REQUIRE(fs::exists(report));
    Run v = invoke(dir, "verify reports/" + std::string(task) + ".json");
    CHECK_MESSAGE(v.code == 0, v.out);
    CHECK(v.out.find("claims checked") != std::string::npos);
  }
}

TEST_CASE("report contents on the A_1 config") {
  ProblemConfig cfg = ProblemConfig::load(kA1);
  Options opts;

  Json dec = run_task(cfg, "decompose", opts);
  CHECK(dec["schema"] == kReportSchema);
  const Json& ind = dec["result"]["indecomposables"];
  REQUIRE(ind.size() == 2);
  CHECK(ind[0]["isomorphic_to"] == Json::array({"plus"}));
  CHECK(ind[1]["isomorphic_to"] == Json::array({"minus"}));

  Json hom = run_task(cfg, "hom", opts);
  CHECK(hom["result"]["dimension"] == 0);

  Json induced = run_task(cfg, "induce", opts);
  CHECK(induced["result"]["decomposition"]["indecomposables"].size() == 2);

  Json st = run_task(cfg, "strictify", opts);
  CHECK(verify_report(st).exit_code == 0);

  ProblemConfig x4 = ProblemConfig::load(kX4);
  Json ks = run_task(x4, "kstab", opts);
  CHECK(ks["result"]["isomorphic_to_expected"] == true);
  CHECK(verify_report(ks).exit_code == 0);
}

TEST_CASE("malformed input exits 2 and writes nothing") {
  fs::path dir = scratch("malformed");
  std::ofstream(dir / "bad.json") << "{\"ring\": ";
  Run r = invoke(dir, "--out reports validate bad.json");
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK_FALSE(fs::exists(dir / "reports"));

  Json j = read_json(kA1);
  j["tasks"]["weird"] = {{"op", "no-such-operation"}};
  write_json(dir / "unknown-op.json", j);
  CHECK(invoke(dir, "--out reports run unknown-op.json weird").code == 2);

  j = read_json(kA1);
  j["schema"] = "mfg.config/999";
  write_json(dir / "schema.json", j);
  CHECK(invoke(dir, "--out reports validate schema.json").code == 2);

  CHECK(invoke(dir, "--no-such-flag validate bad.json").code == 2);
  CHECK_FALSE(fs::exists(dir / "reports"));
}

TEST_CASE("invalid data exits 3 before any task runs") {
  fs::path dir = scratch("invalid");
  Json j = read_json(kA1);
  j["objects"]["plus"]["B"] = Json::array({Json::array({"x^2"})});
  write_json(dir / "inhomogeneous.json", j);
  Run r = invoke(dir, "--out reports run inhomogeneous.json validate decompose");
  CHECK(r.code == 3);
  CHECK(r.err.find("plus") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "reports"));

  j = read_json(kA1);
  j["objects"]["plus"]["action"]["s"]["M1"] = Json::array({Json::array({"1"})});
  write_json(dir / "not-equivariant.json", j);
  CHECK(invoke(dir, "--out reports validate not-equivariant.json").code == 3);

  j = read_json(kA1);
  j["tasks"]["decompose"]["object"] = "missing";
  write_json(dir / "reference.json", j);
  CHECK(invoke(dir, "--out reports run reference.json validate").code == 3);
  CHECK(invoke(dir, "--out reports run " + kA1 + " no-such-task").code == 3);
}

TEST_CASE("verify rejects corrupted certificates and names the identity") {
  ProblemConfig cfg = ProblemConfig::load(kA1);
  Json good = run_task(cfg, "split", Options{});
  REQUIRE(verify_report(good).exit_code == 0);

  // Doubling pi keeps it an equivariant chain map but breaks pi iota = id.
  Json bad = good;
  for (const char* part : {"U0", "U1"})
    for (auto& row : bad["certificate"]["morphisms"]["pi"][part])
      for (auto& entry : row) entry = "2*(" + entry.get<std::string>() + ")";
  VerifyOutcome v = verify_report(bad);
  CHECK(v.exit_code == 1);
  CHECK(v.first_failure.find("pi_iota") != std::string::npos);

  // A non-homogeneous entry fails the morphism itself.
  bad = good;
  bad["certificate"]["morphisms"]["iota"]["U0"][0][0] = "x";
  v = verify_report(bad);
  CHECK(v.exit_code == 1);
  CHECK(v.first_failure.find("iota") != std::string::npos);

  // theta_s composed with its pullback is not null-homotopic, whatever the witness.
  Json st = run_task(cfg, "strictify", Options{});
  bool corrupted = false;
  for (auto& claim : st["certificate"]["claims"]) {
    if (claim["id"] != "theta_cocycle_s_s") continue;
    claim["rhs"] = Json::array();
    corrupted = true;
  }
  REQUIRE(corrupted);
  v = verify_report(st);
  CHECK(v.exit_code == 1);
  CHECK(v.first_failure.find("theta_cocycle_s_s") != std::string::npos);

  bad = good;
  bad["schema"] = "mfg.report/0";
  CHECK(verify_report(bad).exit_code == 2);

  fs::path dir = scratch("verify");
  write_json(dir / "good.json", good);
  write_json(dir / "bad.json", bad);
  Run a = invoke(dir, "verify good.json"), b = invoke(dir, "verify good.json");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(invoke(dir, "verify bad.json").code == 2);
  std::ofstream(dir / "broken.json") << "[1, 2";
  CHECK(invoke(dir, "verify broken.json").code == 2);
}

TEST_CASE("same config and seed give byte-identical reports") {
  fs::path dir = scratch("determinism");
  const std::string tasks = " run " + kA1 + " validate decompose hom induce split strictify extend";
  REQUIRE(invoke(dir, "--seed 5 --out one" + tasks).code == 0);
  REQUIRE(invoke(dir, "--seed 5 --out two" + tasks).code == 0);
  REQUIRE(invoke(dir, "--seed 5 --parallel --out three" + tasks).code == 0);
  auto one = read_tree(dir / "one");
  CHECK(one.size() == 7);
  CHECK(one == read_tree(dir / "two"));
  CHECK(one == read_tree(dir / "three"));
  CHECK(read_json(dir / "one" / "split.json")["seed"] == 5);
}

TEST_CASE("command line overrides reach the tasks") {
  fs::path dir = scratch("overrides");
  Run r = invoke(dir, "--max-steps 1 --out reports kstab " + kX4);
  CHECK(r.code == 1);
  r = invoke(dir, "--degree-bound 1 --out reports kstab " + kX4);
  CHECK(r.code != 0);
  r = invoke(dir, "--max-steps 6 --degree-bound 8 --out reports kstab " + kX4);
  CHECK_MESSAGE(r.code == 0, r.err);
}
