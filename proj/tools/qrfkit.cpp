#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrf/checks.hpp"
#include "qrf/report.hpp"
#include "qrf/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitLoadError = 2;

void write_report(const qrf::Report& report, const std::string& path,
                  const std::string& format) {
  const std::string body = format == "text" ? qrf::emit_report_text(report)
                                            : qrf::emit_report_json(report);
  if (path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(path, std::ios::binary);
    out << body;
  }
}

int run_one(const std::string& file, const qrf::RunOptions& options,
            const std::string& report_path, const std::string& format) {
  qrf::Scenario scenario;
  try {
    scenario = qrf::load_scenario(file, options.seed);
  } catch (const qrf::ScenarioLoadError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kExitLoadError;
  }
  const qrf::Report report = qrf::run_scenario(scenario, options);
  write_report(report, report_path, format);
  return report.pass == static_cast<int>(report.checks.size())
             ? kExitPass
             : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scenario-driven verification of covariant-frame identities"};
  app.require_subcommand(1);

  double tolerance = qrf::kDefaultTol;
  std::uint64_t seed = 0;
  std::string report_path;
  std::string format = "json";
  app.add_option("--tolerance", tolerance, "Default residual tolerance");
  app.add_option("--seed", seed, "Seed for randomized declarations");
  app.add_option("--report", report_path, "Write the report to this file");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));

  std::string check_file;
  auto* check = app.add_subcommand("check", "Load and run a scenario file");
  check->add_option("file", check_file, "Scenario file")->required();

  std::string validate_file;
  auto* validate =
      app.add_subcommand("validate", "Load a scenario file without running");
  validate->add_option("file", validate_file, "Scenario file")->required();

  std::string corpus_dir = "scenarios";
  auto* corpus =
      app.add_subcommand("corpus", "Run every bundled scenario in a directory");
  corpus->add_option("dir", corpus_dir, "Scenario directory");

  CLI11_PARSE(app, argc, argv);

  qrf::RunOptions options;
  options.tolerance = tolerance;
  options.seed = seed;

  if (check->parsed()) {
    return run_one(check_file, options, report_path, format);
  }

  if (validate->parsed()) {
    try {
      const qrf::Scenario s = qrf::load_scenario(validate_file, seed);
      std::cout << validate_file << ": ok (" << s.checks.size()
                << " checks declared)\n";
      return kExitPass;
    } catch (const qrf::ScenarioLoadError& e) {
      std::cerr << validate_file << ": " << e.what() << "\n";
      return kExitLoadError;
    }
  }

  // corpus: run every scenario file; files prefixed "broken_" are negative
  // fixtures exercised individually and skipped here.
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
    if (entry.path().extension() != ".json") continue;
    if (entry.path().filename().string().rfind("broken_", 0) == 0) continue;
    files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  int worst = kExitPass;
  for (const std::string& file : files) {
    const int code = run_one(file, options, "", "text");
    std::cout << file << ": " << (code == kExitPass ? "pass" : "FAIL") << "\n";
    worst = std::max(worst, code);
  }
  std::cout << files.size() << " scenario files\n";
  return worst;
}
