#include "qrf/scenario.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "qrf/checks.hpp"
#include "qrf/report.hpp"

namespace qrf {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ScenarioLoadError(path + ": " + what);
}

const Json& get(const Json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing required key \"" + key + "\"");
  return *it;
}

int get_int(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = get(j, key, path);
  if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
  return v.get<int>();
}

std::string get_str(const Json& j, const std::string& key,
                    const std::string& path) {
  const Json& v = get(j, key, path);
  if (!v.is_string()) fail(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::vector<int> parse_int_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integers");
  std::vector<int> out;
  for (const Json& v : j) {
    if (!v.is_number_integer()) fail(path, "expected an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<std::vector<int>> parse_int_table(const Json& j,
                                              const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integer rows");
  std::vector<std::vector<int>> out;
  for (const Json& row : j) out.push_back(parse_int_vector(row, path));
  return out;
}

std::vector<std::string> parse_labels(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of labels");
  std::vector<std::string> out;
  for (const Json& v : j) {
    if (!v.is_string()) fail(path, "expected an array of labels");
    out.push_back(v.get<std::string>());
  }
  return out;
}

SampleSpace parse_space(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return SampleSpace::indexed(j.get<int>());
  if (j.is_array()) return SampleSpace(parse_labels(j, path));
  fail(path, "expected a point count or an array of labels");
}

std::vector<Matrix> parse_matrices(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of matrices");
  std::vector<Matrix> out;
  for (const Json& m : j) out.push_back(parse_matrix(m));
  return out;
}

/// Deterministic per-object engine: global seed mixed with the object path.
std::mt19937_64 engine_for(std::uint64_t seed, const std::string& path) {
  std::uint64_t h = 14695981039346656037ull ^ seed;
  for (unsigned char c : path) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return std::mt19937_64(h);
}

Matrix random_ginibre(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return g;
}

State random_state(int dim, std::mt19937_64& rng) {
  const Matrix g = random_ginibre(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return State(std::move(rho));
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
  const Matrix g = random_ginibre(dim, rng);
  return (g + g.adjoint()) / 2.0;
}

Matrix pauli(const std::string& which, const std::string& path) {
  Matrix m(2, 2);
  if (which == "I") m << 1, 0, 0, 1;
  else if (which == "X") m << 0, 1, 1, 0;
  else if (which == "Y") m << 0, Complex(0, -1), Complex(0, 1), 0;
  else if (which == "Z") m << 1, 0, 0, -1;
  else fail(path, "unknown Pauli \"" + which + "\"");
  return m;
}

template <typename T>
const T& resolve(const std::map<std::string, T>& table, const std::string& id,
                 const std::string& table_name, const std::string& path) {
  auto it = table.find(id);
  if (it == table.end()) {
    fail(path, "unresolved " + table_name + " reference \"" + id + "\"");
  }
  return it->second;
}

}  // namespace

Matrix parse_matrix(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ScenarioLoadError("matrix: expected an array of rows");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.front().size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ScenarioLoadError("matrix: ragged rows");
    }
    for (int k = 0; k < cols; ++k) {
      const Json& e = row[k];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
                 e[1].is_number()) {
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ScenarioLoadError(
            "matrix: entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

Scenario load_scenario_text(const std::string& text, std::uint64_t seed) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ScenarioLoadError(std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) throw ScenarioLoadError("scenario: expected an object");

  Scenario s;
  s.canonical = root.dump();
  s.name = root.value("name", std::string("unnamed"));

  auto section = [&](const char* key) -> Json {
    auto it = root.find(key);
    if (it == root.end()) return Json::object();
    if (!it->is_object()) {
      fail(key, "expected an object keyed by id");
    }
    return *it;
  };

  // Declarations are materialized in dependency order; each constructor runs
  // the full type invariants, so a bad object fails here, at load.
  const Json decl_groups = section("groups");
  for (const auto& [id, j] : decl_groups.items()) {
    const std::string path = "groups/" + id;
    try {
      const std::string kind = j.value("kind", std::string("table"));
      if (kind == "trivial") s.groups.emplace(id, FiniteGroup::trivial());
      else if (kind == "cyclic")
        s.groups.emplace(id, FiniteGroup::cyclic(get_int(j, "n", path)));
      else if (kind == "symmetric")
        s.groups.emplace(id, FiniteGroup::symmetric(get_int(j, "n", path)));
      else if (kind == "dihedral")
        s.groups.emplace(
            id, SemidirectProduct::dihedral(get_int(j, "n", path)).product());
      else if (kind == "table")
        s.groups.emplace(id, std::make_shared<const FiniteGroup>(
                                 parse_int_table(get(j, "table", path), path)));
      else
        fail(path, "unknown group kind \"" + kind + "\"");
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_inclusions = section("inclusions");
  for (const auto& [id, j] : decl_inclusions.items()) {
    const std::string path = "inclusions/" + id;
    try {
      s.inclusions.emplace(
          id, SubgroupInclusion(
                  resolve(s.groups, get_str(j, "sub", path), "group", path),
                  resolve(s.groups, get_str(j, "parent", path), "group", path),
                  parse_int_vector(get(j, "embed", path), path)));
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_reps = section("reps");
  for (const auto& [id, j] : decl_reps.items()) {
    const std::string path = "reps/" + id;
    try {
      const GroupPtr& g =
          resolve(s.groups, get_str(j, "group", path), "group", path);
      const std::string kind = j.value("kind", std::string("matrices"));
      if (kind == "regular") s.reps.emplace(id, UnitaryRep::regular(g));
      else if (kind == "trivial")
        s.reps.emplace(id, UnitaryRep::trivial(g, get_int(j, "dim", path)));
      else if (kind == "matrices")
        s.reps.emplace(
            id, UnitaryRep(g, parse_matrices(get(j, "matrices", path), path)));
      else
        fail(path, "unknown rep kind \"" + kind + "\"");
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_states = section("states");
  for (const auto& [id, j] : decl_states.items()) {
    const std::string path = "states/" + id;
    try {
      if (j.contains("matrix")) {
        s.states.emplace(id, State(parse_matrix(get(j, "matrix", path))));
        continue;
      }
      const std::string kind = get_str(j, "kind", path);
      const int dim = get_int(j, "dim", path);
      if (kind == "basis") {
        Matrix m = Matrix::Zero(dim, dim);
        const int i = get_int(j, "index", path);
        if (i < 0 || i >= dim) fail(path, "basis index out of range");
        m(i, i) = 1.0;
        s.states.emplace(id, State(std::move(m)));
      } else if (kind == "maximally_mixed") {
        s.states.emplace(id,
                         State(Matrix::Identity(dim, dim) / double(dim)));
      } else if (kind == "random") {
        auto rng = engine_for(seed, path);
        s.states.emplace(id, random_state(dim, rng));
      } else {
        fail(path, "unknown state kind \"" + kind + "\"");
      }
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_operators = section("operators");
  for (const auto& [id, j] : decl_operators.items()) {
    const std::string path = "operators/" + id;
    try {
      if (j.contains("matrix")) {
        s.operators.emplace(id, parse_matrix(get(j, "matrix", path)));
        continue;
      }
      const std::string kind = get_str(j, "kind", path);
      if (kind == "random_hermitian") {
        auto rng = engine_for(seed, path);
        s.operators.emplace(id,
                            random_hermitian(get_int(j, "dim", path), rng));
      } else if (kind == "pauli") {
        s.operators.emplace(id, pauli(get_str(j, "which", path), path));
      } else {
        fail(path, "unknown operator kind \"" + kind + "\"");
      }
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_channels = section("channels");
  for (const auto& [id, j] : decl_channels.items()) {
    const std::string path = "channels/" + id;
    try {
      const std::string kind = get_str(j, "kind", path);
      if (kind == "identity")
        s.channels.emplace(id, Channel::identity(get_int(j, "dim", path)));
      else if (kind == "unitary")
        s.channels.emplace(
            id, Channel::unitary(parse_matrix(get(j, "matrix", path))));
      else if (kind == "depolarizing")
        s.channels.emplace(id, Channel::depolarizing(get_int(j, "dim", path)));
      else if (kind == "kraus")
        s.channels.emplace(
            id, Channel(parse_matrices(get(j, "kraus", path), path)));
      else
        fail(path, "unknown channel kind \"" + kind + "\"");
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_povms = section("povms");
  for (const auto& [id, j] : decl_povms.items()) {
    const std::string path = "povms/" + id;
    try {
      Povm povm = j.value("kind", std::string("effects")) == "ideal"
                      ? Povm::ideal(parse_space(get(j, "space", path), path))
                      : Povm(parse_space(get(j, "space", path), path),
                             parse_matrices(get(j, "effects", path), path));
      if (j.contains("covariant")) {
        const Json& cov = j["covariant"];
        const UnitaryRep& rep =
            resolve(s.reps, get_str(cov, "rep", path), "rep", path);
        std::vector<std::vector<int>> action;
        const Json& act = get(cov, "action", path + "/covariant");
        if (act.is_string() && act.get<std::string>() == "right_translation") {
          const GroupPtr& g = rep.group();
          if (povm.space().size() != g->order()) {
            fail(path, "right-translation action needs a group-sized space");
          }
          action.resize(g->order(), std::vector<int>(g->order()));
          for (int a = 0; a < g->order(); ++a) {
            for (int x = 0; x < g->order(); ++x) action[a][x] = g->op(x, a);
          }
        } else {
          action = parse_int_table(act, path + "/covariant/action");
        }
        s.covariant_povms.emplace(id,
                                  CovariantPovm(povm, rep, std::move(action)));
      }
      s.povms.emplace(id, std::move(povm));
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_frames = section("frames");
  for (const auto& [id, j] : decl_frames.items()) {
    const std::string path = "frames/" + id;
    try {
      const GroupPtr& g =
          resolve(s.groups, get_str(j, "group", path), "group", path);
      const std::string kind = j.value("kind", std::string("custom"));
      if (kind == "regular") {
        s.frames.emplace(id, GroupFrame::regular(g));
      } else if (kind == "custom") {
        std::optional<UnitaryRep> rep;
        if (j.contains("rep")) {
          rep = resolve(s.reps, get_str(j, "rep", path), "rep", path);
        }
        s.frames.emplace(
            id, GroupFrame(g,
                           resolve(s.povms, get_str(j, "povm", path), "povm",
                                   path),
                           std::move(rep)));
      } else {
        fail(path, "unknown frame kind \"" + kind + "\"");
      }
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_operator_fields = section("operator_fields");
  for (const auto& [id, j] : decl_operator_fields.items()) {
    const std::string path = "operator_fields/" + id;
    try {
      if (j.value("kind", std::string("values")) == "random") {
        auto rng = engine_for(seed, path);
        SampleSpace space = parse_space(get(j, "space", path), path);
        const int dim = get_int(j, "dim", path);
        std::vector<Matrix> values;
        for (int x = 0; x < space.size(); ++x) {
          values.push_back(random_hermitian(dim, rng));
        }
        s.operator_fields.emplace(
            id, OperatorField(std::move(space), std::move(values)));
      } else {
        s.operator_fields.emplace(
            id, OperatorField(parse_space(get(j, "space", path), path),
                              parse_matrices(get(j, "values", path), path)));
      }
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_bundles = section("bundles");
  for (const auto& [id, j] : decl_bundles.items()) {
    const std::string path = "bundles/" + id;
    try {
      const GroupPtr& g =
          resolve(s.groups, get_str(j, "group", path), "group", path);
      const std::string kind = j.value("kind", std::string("table"));
      if (kind == "trivial") {
        s.bundles.emplace(
            id, PrincipalBundle::trivial(
                    parse_labels(get(j, "base", path), path), g));
      } else if (kind == "table") {
        s.bundles.emplace(
            id, std::make_shared<const PrincipalBundle>(
                    parse_labels(get(j, "base", path), path),
                    parse_labels(get(j, "total", path), path), g,
                    parse_int_vector(get(j, "proj", path), path),
                    parse_int_table(get(j, "action", path), path)));
      } else {
        fail(path, "unknown bundle kind \"" + kind + "\"");
      }
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_sections = section("sections");
  for (const auto& [id, j] : decl_sections.items()) {
    const std::string path = "sections/" + id;
    try {
      std::map<int, int> map;
      for (const auto& [p, b] : get(j, "map", path).items()) {
        if (!b.is_number_integer()) fail(path, "section map values must be ints");
        map[std::stoi(p)] = b.get<int>();
      }
      s.sections.emplace(
          id, LocalSection(
                  resolve(s.bundles, get_str(j, "bundle", path), "bundle",
                          path),
                  parse_int_vector(get(j, "domain", path), path),
                  std::move(map)));
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_bundle_frames = section("bundle_frames");
  for (const auto& [id, j] : decl_bundle_frames.items()) {
    const std::string path = "bundle_frames/" + id;
    try {
      const BundlePtr& bundle =
          resolve(s.bundles, get_str(j, "bundle", path), "bundle", path);
      const LocalSection& section =
          resolve(s.sections, get_str(j, "section", path), "section", path);
      const std::string kind = j.value("kind", std::string("custom"));
      if (kind == "ideal") {
        s.bundle_frames.emplace(id, BundleFrame::ideal(bundle, section));
      } else if (kind == "custom") {
        std::optional<UnitaryRep> rep;
        if (j.contains("rep")) {
          rep = resolve(s.reps, get_str(j, "rep", path), "rep", path);
        }
        s.bundle_frames.emplace(
            id, BundleFrame(bundle, section,
                            resolve(s.povms, get_str(j, "povm", path), "povm",
                                    path),
                            std::move(rep)));
      } else {
        fail(path, "unknown bundle-frame kind \"" + kind + "\"");
      }
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_fields = section("fields");
  for (const auto& [id, j] : decl_fields.items()) {
    const std::string path = "fields/" + id;
    try {
      std::map<int, Matrix> values;
      for (const auto& [p, m] : get(j, "values", path).items()) {
        values[std::stoi(p)] = parse_matrix(m);
      }
      s.fields.emplace(
          id, QuantumField(std::move(values),
                           resolve(s.reps, get_str(j, "sys_rep", path), "rep",
                                   path)));
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_embeddings = section("embeddings");
  for (const auto& [id, j] : decl_embeddings.items()) {
    const std::string path = "embeddings/" + id;
    try {
      s.embeddings.emplace(
          id,
          BundleEmbedding(
              resolve(s.bundles, get_str(j, "sub", path), "bundle", path),
              resolve(s.bundles, get_str(j, "parent", path), "bundle", path),
              resolve(s.inclusions, get_str(j, "inclusion", path), "inclusion",
                      path),
              parse_int_vector(get(j, "total_map", path), path),
              parse_int_vector(get(j, "base_map", path), path)));
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_morphisms = section("morphisms");
  for (const auto& [id, j] : decl_morphisms.items()) {
    const std::string path = "morphisms/" + id;
    try {
      std::map<int, int> theta;
      for (const auto& [b, b2] : get(j, "theta", path).items()) {
        if (!b2.is_number_integer()) fail(path, "theta values must be ints");
        theta[std::stoi(b)] = b2.get<int>();
      }
      s.morphisms.emplace(
          id, FrameMorphism(resolve(s.channels, get_str(j, "psi", path),
                                    "channel", path),
                            std::move(theta)));
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_difference_operators = section("difference_operators");
  for (const auto& [id, j] : decl_difference_operators.items()) {
    const std::string path = "difference_operators/" + id;
    try {
      const std::string kind = j.value("kind", std::string("matrix"));
      if (kind == "forward_difference") {
        s.difference_operators.emplace(
            id, DifferenceOperator::forward_difference(get_int(j, "n", path)));
      } else if (kind == "matrix") {
        Matrix m = parse_matrix(get(j, "matrix", path));
        SampleSpace grid =
            j.contains("grid")
                ? parse_space(j["grid"], path)
                : SampleSpace::indexed(static_cast<int>(m.rows()));
        s.difference_operators.emplace(
            id, DifferenceOperator(std::move(grid), std::move(m)));
      } else {
        fail(path, "unknown difference-operator kind \"" + kind + "\"");
      }
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_scalar_actions = section("scalar_actions");
  for (const auto& [id, j] : decl_scalar_actions.items()) {
    const std::string path = "scalar_actions/" + id;
    try {
      const GroupPtr& g =
          resolve(s.groups, get_str(j, "group", path), "group", path);
      const std::string kind = j.value("kind", std::string("point_action"));
      if (kind == "point_action") {
        s.scalar_actions.emplace(
            id, ScalarAction::from_point_action(
                    g, parse_int_table(get(j, "action", path), path)));
      } else if (kind == "matrices") {
        s.scalar_actions.emplace(
            id, ScalarAction(g, parse_matrices(get(j, "matrices", path),
                                               path)));
      } else {
        fail(path, "unknown scalar-action kind \"" + kind + "\"");
      }
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  const Json decl_models = section("models");
  for (const auto& [id, j] : decl_models.items()) {
    const std::string path = "models/" + id;
    try {
      s.models.emplace(
          id,
          FrameBundleModel(
              resolve(s.bundles, get_str(j, "bundle", path), "bundle", path),
              resolve(s.inclusions, get_str(j, "little", path), "inclusion",
                      path),
              resolve(s.sections, get_str(j, "reference", path), "section",
                      path)));
    } catch (const ScenarioLoadError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  if (root.contains("checks")) {
    const Json& checks = root["checks"];
    if (!checks.is_array()) fail("checks", "expected an array");
    int index = 0;
    for (const Json& j : checks) {
      const std::string path = "checks/" + std::to_string(index);
      if (!j.is_object()) fail(path, "expected an object");
      CheckSpec spec;
      spec.kind = get_str(j, "kind", path);
      spec.name = j.value("name", spec.kind + "#" + std::to_string(index));
      if (j.contains("tolerance")) {
        if (!j["tolerance"].is_number()) fail(path, "tolerance must be a number");
        spec.tolerance = j["tolerance"].get<double>();
      }
      spec.args = j;
      validate_check(s, spec);
      s.checks.push_back(std::move(spec));
      ++index;
    }
  }

  return s;
}

Scenario load_scenario(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioLoadError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario_text(buf.str(), seed);
}

}  // namespace qrf
