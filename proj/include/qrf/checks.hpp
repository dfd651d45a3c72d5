#pragma once

#include <map>
#include <string>
#include <vector>

#include "qrf/report.hpp"
#include "qrf/scenario.hpp"

namespace qrf {

struct RunOptions {
  double tolerance = kDefaultTol;
  std::uint64_t seed = 0;
};

/// One registry entry per invocable check kind.
struct CheckKindInfo {
  std::string module;  // owning module name
  /// Required id references: argument key -> declaration table name.
  std::vector<std::pair<std::string, std::string>> refs;
  /// Optional id references, same shape.
  std::vector<std::pair<std::string, std::string>> optional_refs;
};

/// kind -> registry info, covering every check exposed by the measure,
/// ov-integral, group-qrf, bundle-qrf, pde-lift and geometry modules.
const std::map<std::string, CheckKindInfo>& check_registry();

/// Validates a check spec against the registry and the scenario's
/// declarations; throws ScenarioLoadError naming the failing reference.
void validate_check(const Scenario& s, const CheckSpec& spec);

/// Runs all declared checks in order and assembles the report.
Report run_scenario(const Scenario& s, const RunOptions& options);

}  // namespace qrf
