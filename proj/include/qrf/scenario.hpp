#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrf/bundle_qrf.hpp"
#include "qrf/geometry.hpp"
#include "qrf/group_qrf.hpp"
#include "qrf/pde_lift.hpp"

namespace qrf {

using Json = nlohmann::json;

/// Raised on any scenario-file problem: parse errors, unresolved references,
/// or declared objects violating their type invariants. The message names the
/// offending object path.
class ScenarioLoadError : public Error {
 public:
  explicit ScenarioLoadError(const std::string& what) : Error(what) {}
};

struct CheckSpec {
  std::string kind;
  std::string name;
  Json args;
  std::optional<double> tolerance;
};

/// Fully validated scenario: every declared object has passed its type
/// invariants, every id reference resolves. Randomized declarations
/// ("kind": "random...") are materialized deterministically from the seed.
class Scenario {
 public:
  std::string name;
  std::string canonical;  // canonical serialization of the input, for digests

  std::map<std::string, GroupPtr> groups;
  std::map<std::string, SubgroupInclusion> inclusions;
  std::map<std::string, UnitaryRep> reps;
  std::map<std::string, State> states;
  std::map<std::string, Matrix> operators;
  std::map<std::string, Channel> channels;
  std::map<std::string, Povm> povms;
  std::map<std::string, CovariantPovm> covariant_povms;
  std::map<std::string, GroupFrame> frames;
  std::map<std::string, OperatorField> operator_fields;
  std::map<std::string, BundlePtr> bundles;
  std::map<std::string, LocalSection> sections;
  std::map<std::string, BundleFrame> bundle_frames;
  std::map<std::string, QuantumField> fields;
  std::map<std::string, BundleEmbedding> embeddings;
  std::map<std::string, FrameMorphism> morphisms;
  std::map<std::string, DifferenceOperator> difference_operators;
  std::map<std::string, ScalarAction> scalar_actions;
  std::map<std::string, FrameBundleModel> models;

  std::vector<CheckSpec> checks;
};

/// Parse and validate a scenario from JSON text. Throws ScenarioLoadError
/// with the failing object path on any problem.
Scenario load_scenario_text(const std::string& text, std::uint64_t seed = 0);

/// Reads the file and delegates to load_scenario_text.
Scenario load_scenario(const std::string& path, std::uint64_t seed = 0);

/// Parse an m×n complex matrix from JSON: rows of entries, each entry a
/// number (real) or a two-element [re, im] array.
Matrix parse_matrix(const Json& j);

}  // namespace qrf
