#include <doctest.h>

#include <filesystem>
#include <set>
#include <string>

#include "qrf/checks.hpp"
#include "qrf/report.hpp"
#include "qrf/scenario.hpp"

using namespace qrf;

namespace {

std::string scenario_path(const std::string& file) {
  return std::string(SCENARIOS_DIR) + "/" + file;
}

Report run_file(const std::string& file) {
  const Scenario s = load_scenario(scenario_path(file));
  return run_scenario(s, RunOptions{});
}

}  // namespace

TEST_CASE("an empty scenario yields an empty passing report") {
  const Scenario s = load_scenario_text("{}");
  CHECK(s.name == "unnamed");
  const Report report = run_scenario(s, RunOptions{});
  CHECK(report.checks.empty());
  CHECK(report.pass == 0);
  CHECK(report.fail == 0);
  const std::string json = emit_report_json(report);
  CHECK(json.find("\"version\"") != std::string::npos);
  CHECK(json.find("\"digest\"") != std::string::npos);
}

TEST_CASE("malformed declarations fail at load and name the object") {
  try {
    load_scenario(scenario_path("broken_normalization.json"));
    FAIL("expected a load error");
  } catch (const ScenarioLoadError& e) {
    const std::string what = e.what();
    CHECK(what.find("povms/overweight") != std::string::npos);
  }
}

TEST_CASE("unresolved references fail at load") {
  CHECK_THROWS_AS(
      load_scenario_text(R"({"checks": [{"kind": "povm_sharpness",
                             "name": "x", "povm": "nope"}]})"),
      ScenarioLoadError);
}

TEST_CASE("the z2 flip scenario loads fully and passes every check") {
  const Scenario s = load_scenario(scenario_path("z2_flip.json"));
  CHECK(s.groups.size() == 1);
  CHECK(s.reps.size() == 2);
  CHECK(s.povms.size() == 1);
  CHECK(s.covariant_povms.size() == 1);
  CHECK(s.checks.size() == 6);
  const Report report = run_scenario(s, RunOptions{});
  CHECK(report.pass == 6);
  CHECK(report.fail == 0);
  CHECK(report.precondition_errors == 0);
  for (const CheckResult& r : report.checks) {
    CHECK(r.status == "pass");
    CHECK(r.residual <= 1e-12);
  }
}

TEST_CASE("a covariance violation is reported as a clean failure") {
  const Report report = run_file("broken_covariance.json");
  CHECK(report.fail == 1);
  REQUIRE(report.checks.size() == 1);
  CHECK(report.checks[0].status == "fail");
  CHECK(report.checks[0].residual == doctest::Approx(1.0));
}

TEST_CASE("reports are byte-identical across independent runs") {
  const std::string a = emit_report_json(run_file("geometry_s3.json"));
  const std::string b = emit_report_json(run_file("geometry_s3.json"));
  CHECK(a == b);
  CHECK(!a.empty());
}

TEST_CASE("the corpus exercises the full check registry") {
  std::set<std::string> seen;
  for (const auto& entry :
       std::filesystem::directory_iterator(SCENARIOS_DIR)) {
    const std::string file = entry.path().filename().string();
    if (entry.path().extension() != ".json") continue;
    if (file.rfind("broken_", 0) == 0) continue;
    const Scenario s = load_scenario(entry.path().string());
    for (const CheckSpec& spec : s.checks) seen.insert(spec.kind);
  }
  std::set<std::string> modules;
  for (const auto& [kind, info] : check_registry()) {
    CHECK_MESSAGE(seen.count(kind) == 1, "kind not covered: ", kind);
    modules.insert(info.module);
  }
  const std::set<std::string> expected = {"measure",    "ov-integral",
                                          "group-qrf",  "bundle-qrf",
                                          "pde-lift",   "geometry"};
  CHECK(modules == expected);
}

TEST_CASE("randomized declarations are deterministic in the seed") {
  const std::string text = R"({
    "states": {"rho": {"kind": "random", "dim": 3}},
    "operators": {"a": {"kind": "random_hermitian", "dim": 3}},
    "checks": []
  })";
  const Scenario s1 = load_scenario_text(text, 7);
  const Scenario s2 = load_scenario_text(text, 7);
  const Scenario s3 = load_scenario_text(text, 8);
  CHECK(max_abs_diff(s1.states.at("rho").op(), s2.states.at("rho").op()) ==
        0.0);
  CHECK(max_abs_diff(s1.operators.at("a"), s2.operators.at("a")) == 0.0);
  CHECK(max_abs_diff(s1.states.at("rho").op(), s3.states.at("rho").op()) >
        1e-3);
}
