#include "qrf/checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

namespace qrf {
namespace {

[[noreturn]] void bad_check(const std::string& name, const std::string& what) {
  throw ScenarioLoadError("checks/" + name + ": " + what);
}

std::string arg_str(const CheckSpec& spec, const std::string& key) {
  auto it = spec.args.find(key);
  if (it == spec.args.end() || !it->is_string()) {
    bad_check(spec.name, "missing string argument \"" + key + "\"");
  }
  return it->get<std::string>();
}

int arg_int(const CheckSpec& spec, const std::string& key) {
  auto it = spec.args.find(key);
  if (it == spec.args.end() || !it->is_number_integer()) {
    bad_check(spec.name, "missing integer argument \"" + key + "\"");
  }
  return it->get<int>();
}

std::vector<int> arg_ints(const CheckSpec& spec, const std::string& key) {
  auto it = spec.args.find(key);
  if (it == spec.args.end() || !it->is_array()) {
    bad_check(spec.name, "missing array argument \"" + key + "\"");
  }
  std::vector<int> out;
  for (const Json& v : *it) {
    if (!v.is_number_integer()) {
      bad_check(spec.name, "\"" + key + "\" must contain integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<double> arg_doubles(const CheckSpec& spec, const std::string& key) {
  auto it = spec.args.find(key);
  if (it == spec.args.end() || !it->is_array()) {
    bad_check(spec.name, "missing array argument \"" + key + "\"");
  }
  std::vector<double> out;
  for (const Json& v : *it) {
    if (!v.is_number()) {
      bad_check(spec.name, "\"" + key + "\" must contain numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

template <typename T>
const T& ref(const std::map<std::string, T>& table, const CheckSpec& spec,
             const std::string& key) {
  const std::string id = arg_str(spec, key);
  auto it = table.find(id);
  if (it == table.end()) {
    bad_check(spec.name, "unresolved reference \"" + id + "\" for \"" + key +
                             "\"");
  }
  return it->second;
}

double max_effect_defect(const Povm& p,
                         const std::function<Matrix(const Matrix&)>& f) {
  double worst = 0.0;
  for (int x = 0; x < p.space().size(); ++x) {
    worst = std::max(worst, spectral_norm(f(p.effect(x))));
  }
  return worst;
}

// ---- handlers: each returns the check's residual ------------------------

double run_povm_covariance(const Scenario& s, const CheckSpec& c, double) {
  return ref(s.covariant_povms, c, "povm").covariance_violation();
}

double run_povm_sharpness(const Scenario& s, const CheckSpec& c, double) {
  const Povm& p = ref(s.povms, c, "povm");
  return max_effect_defect(p, [](const Matrix& e) { return e * e - e; });
}

double run_born_measure(const Scenario& s, const CheckSpec& c, double) {
  const Povm& p = ref(s.povms, c, "povm");
  const State& omega = ref(s.states, c, "omega");
  const Eigen::VectorXd mu = born_measure(p, omega);
  if (c.args.contains("expected")) {
    const std::vector<double> expected = arg_doubles(c, "expected");
    if (static_cast<int>(expected.size()) != mu.size()) {
      bad_check(c.name, "expected vector has the wrong length");
    }
    double worst = 0.0;
    for (int i = 0; i < mu.size(); ++i) {
      worst = std::max(worst, std::abs(mu(i) - expected[i]));
    }
    return worst;
  }
  return std::abs(mu.sum() - 1.0);
}

double run_povm_pushforward(const Scenario& s, const CheckSpec& c, double) {
  const Povm& p = ref(s.povms, c, "povm");
  const std::vector<int> f = arg_ints(c, "map");
  int target_size = 0;
  for (int y : f) target_size = std::max(target_size, y + 1);
  if (c.args.contains("target_size")) target_size = arg_int(c, "target_size");
  const Povm pushed = push_forward(p, f, SampleSpace::indexed(target_size));
  if (!c.args.contains("omega")) return 0.0;
  const State& omega = ref(s.states, c, "omega");
  const Eigen::VectorXd mu = born_measure(p, omega);
  const Eigen::VectorXd nu = born_measure(pushed, omega);
  Eigen::VectorXd direct = Eigen::VectorXd::Zero(target_size);
  for (size_t x = 0; x < f.size(); ++x) direct(f[x]) += mu(static_cast<int>(x));
  return (nu - direct).cwiseAbs().maxCoeff();
}

double run_povm_channel(const Scenario& s, const CheckSpec& c, double) {
  const Povm& p = ref(s.povms, c, "povm");
  const Channel& psi = ref(s.channels, c, "channel");
  const State& omega = ref(s.states, c, "omega");
  const Povm composed = compose_with_channel(psi, p);
  const Eigen::VectorXd lhs = born_measure(composed, omega);
  const Eigen::VectorXd rhs = born_measure(p, psi.schrodinger(omega));
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double run_ov_pairing(const Scenario& s, const CheckSpec& c, double) {
  return pairing_residual(ref(s.operator_fields, c, "field"),
                          ref(s.povms, c, "povm"), ref(s.states, c, "rho"),
                          ref(s.states, c, "omega"));
}

double run_ov_change_of_variables(const Scenario& s, const CheckSpec& c,
                                  double) {
  return change_of_variables_residual(ref(s.operator_fields, c, "field"),
                                      arg_ints(c, "phi"),
                                      ref(s.povms, c, "povm"));
}

double run_ov_channel_interchange(const Scenario& s, const CheckSpec& c,
                                  double) {
  return channel_interchange_residual(ref(s.operator_fields, c, "field"),
                                      ref(s.povms, c, "povm"),
                                      ref(s.channels, c, "channel"));
}

double run_qrf_duality(const Scenario& s, const CheckSpec& c, double) {
  return duality_residual(ref(s.states, c, "rho"), ref(s.states, c, "omega"),
                          ref(s.operators, c, "a"), ref(s.frames, c, "frame"),
                          ref(s.reps, c, "sys_rep"));
}

double run_qrf_invariance(const Scenario& s, const CheckSpec& c, double) {
  return invariance_violation(ref(s.operators, c, "a"),
                              ref(s.frames, c, "frame"),
                              ref(s.reps, c, "sys_rep"));
}

double run_qrf_restriction(const Scenario& s, const CheckSpec& c, double) {
  const GroupFrame& frame = ref(s.frames, c, "frame");
  const UnitaryRep& sys = ref(s.reps, c, "sys_rep");
  const Matrix& a = ref(s.operators, c, "a");
  const State& omega = ref(s.states, c, "omega");
  const Matrix big = relativize(a, frame, sys);
  const int ds = static_cast<int>(a.rows());
  const Matrix conditioned = partial_trace(
      tensor(Matrix::Identity(ds, ds), omega.op()) * big, 1, {ds, frame.dim()});
  return spectral_norm(conditioned - restrict_observable(a, omega, frame, sys));
}

double run_qrf_localizability(const Scenario& s, const CheckSpec& c, double) {
  const GroupFrame& frame = ref(s.frames, c, "frame");
  const UnitaryRep& sys = ref(s.reps, c, "sys_rep");
  const Matrix& a = ref(s.operators, c, "a");
  const std::vector<double> ts = arg_doubles(c, "t_values");
  std::vector<double> expected =
      c.args.contains("expected") ? arg_doubles(c, "expected") : ts;
  if (expected.size() != ts.size()) {
    bad_check(c.name, "expected vector has the wrong length");
  }
  const int d = frame.dim();
  std::vector<State> family;
  for (double t : ts) {
    Matrix m = t / d * Matrix::Identity(d, d);
    m(0, 0) += 1.0 - t;
    family.push_back(State(std::move(m)));
  }
  const std::vector<double> errors =
      localizability_probe(a, frame, sys, family);
  double worst = 0.0;
  for (size_t i = 0; i < ts.size(); ++i) {
    worst = std::max(worst, std::abs(errors[i] - expected[i]));
  }
  return worst;
}

double run_qrf_reduction(const Scenario& s, const CheckSpec& c, double) {
  return reduction_residual(ref(s.operators, c, "a"),
                            ref(s.frames, c, "sub_frame"),
                            ref(s.inclusions, c, "inclusion"),
                            ref(s.reps, c, "sys_rep"));
}

double run_qrf_external_transform(const Scenario& s, const CheckSpec& c,
                                  double tol) {
  return external_frame_transform_residual(
      ref(s.operators, c, "a"), ref(s.frames, c, "from"),
      ref(s.frames, c, "to"), ref(s.channels, c, "psi"),
      ref(s.reps, c, "sys_rep"), tol);
}

double run_qrf_origin_shift(const Scenario& s, const CheckSpec& c, double) {
  const GroupFrame& frame = ref(s.frames, c, "frame");
  const UnitaryRep& sys = ref(s.reps, c, "sys_rep");
  const State& rho = ref(s.states, c, "rho");
  const State& omega = ref(s.states, c, "omega");
  const int g = arg_int(c, "shift");
  const FiniteGroup& grp = *frame.group();
  const Eigen::VectorXd mu = born_measure(frame.observable(), omega);
  // Shifting the origin x ↦ x·g sends μ to μ'(x) = μ(x·g⁻¹) and must be
  // absorbed by pre-rotating the system: ρ^(μ') = (g.ρ)^(μ).
  Eigen::VectorXd shifted(mu.size());
  for (int x = 0; x < grp.order(); ++x) {
    shifted(x) = mu(grp.op(x, grp.inverse(g)));
  }
  const State lhs = relative_state_classical(rho, shifted, sys);
  const State rhs =
      relative_state_classical(sys.act_on_state(g, rho), mu, sys);
  return spectral_norm(lhs.op() - rhs.op());
}

double run_qrf_local_observable(const Scenario& s, const CheckSpec& c,
                                double tol) {
  const OperatorField& field = ref(s.operator_fields, c, "field");
  const GroupFrame& frame = ref(s.frames, c, "frame");
  const State& omega = ref(s.states, c, "omega");
  const Matrix filtered =
      relational_local_observable(field, frame, omega, tol);
  const Eigen::VectorXd mu = born_measure(frame.observable(), omega);
  Matrix dense = Matrix::Zero(field.dim(), field.dim());
  for (int x = 0; x < field.space().size(); ++x) {
    dense += mu(x) * field.value(x);
  }
  return spectral_norm(filtered - dense);
}

double run_qrf_local_observable_gauged(const Scenario& s, const CheckSpec& c,
                                       double tol) {
  const OperatorField& field = ref(s.operator_fields, c, "field");
  const UnitaryRep& gauge = ref(s.reps, c, "gauge_rep");
  const Povm& povm = ref(s.povms, c, "povm");
  const State& omega = ref(s.states, c, "omega");
  const Matrix filtered =
      relational_local_observable_gauged(field, gauge, povm, omega, tol);
  const int nh = gauge.group()->order();
  const Eigen::VectorXd mu = born_measure(povm, omega);
  Matrix dense = Matrix::Zero(field.dim(), field.dim());
  for (int x = 0; x < field.space().size(); ++x) {
    for (int h = 0; h < nh; ++h) {
      dense += mu(x * nh + h) * gauge.act_on_operator(field.value(x), h);
    }
  }
  return spectral_norm(filtered - dense);
}

double run_bundle_invariance(const Scenario& s, const CheckSpec& c, double) {
  return field_invariance_violation(ref(s.fields, c, "field"),
                                    ref(s.bundle_frames, c, "frame"));
}

double run_bundle_localization(const Scenario& s, const CheckSpec& c, double) {
  const BundleFrame& frame = ref(s.bundle_frames, c, "frame");
  const QuantumField& field = ref(s.fields, c, "field");
  const int p = arg_int(c, "point");
  State omega = [&] {
    if (c.args.contains("omega")) return ref(s.states, c, "omega");
    // δ-state concentrated on the section point; requires an ideal-style
    // frame whose Hilbert space is spanned by region points.
    if (frame.dim() != static_cast<int>(frame.region().size())) {
      throw PreconditionError(
          "bundle_localization: default δ-state needs dim == |region|");
    }
    Matrix m = Matrix::Zero(frame.dim(), frame.dim());
    const int i = frame.region_index(frame.section().at(p));
    m(i, i) = 1.0;
    return State(std::move(m));
  }();
  return spectral_norm(restrict_field(field, frame, omega) - field.value(p));
}

double run_bundle_reduction(const Scenario& s, const CheckSpec& c, double) {
  return bundle_reduction_residual(ref(s.fields, c, "field"),
                                   ref(s.bundle_frames, c, "sub_frame"),
                                   ref(s.embeddings, c, "embedding"));
}

double run_bundle_morphism(const Scenario& s, const CheckSpec& c, double tol) {
  return frame_morphism_residual(
      ref(s.fields, c, "field"), ref(s.morphisms, c, "morphism"),
      ref(s.bundle_frames, c, "from"), ref(s.bundle_frames, c, "to"), tol);
}

double run_bundle_local_algebra(const Scenario& s, const CheckSpec& c,
                                double tol) {
  const QuantumField& field = ref(s.fields, c, "field");
  const BundleFrame& frame = ref(s.bundle_frames, c, "frame");
  std::vector<State> states;
  auto it = c.args.find("states");
  if (it == c.args.end() || !it->is_array()) {
    bad_check(c.name, "missing array argument \"states\"");
  }
  for (const Json& id : *it) {
    auto st = s.states.find(id.get<std::string>());
    if (st == s.states.end()) {
      bad_check(c.name, "unresolved state reference in \"states\"");
    }
    states.push_back(st->second);
  }
  const AlgebraReport report =
      relational_local_algebra(field, frame, states, tol);
  return std::abs(report.span_dim - arg_int(c, "expected_span")) +
         std::abs(report.closure_dim - arg_int(c, "expected_closure"));
}

double run_pde_lift_duality(const Scenario& s, const CheckSpec& c, double) {
  return lift_duality_residual(ref(s.difference_operators, c, "op"),
                               ref(s.operator_fields, c, "field"));
}

double run_pde_kernel(const Scenario& s, const CheckSpec& c, double tol) {
  const KernelReport report = kernel_membership(
      ref(s.difference_operators, c, "op"),
      ref(s.operator_fields, c, "field"), tol);
  const bool expect = c.args.value("expect_member", true);
  if (expect) return report.residual;
  return report.member ? 1.0 : 0.0;
}

double run_pde_symmetry(const Scenario& s, const CheckSpec& c, double tol) {
  return ref(s.scalar_actions, c, "action")
      .kernel_preservation_violation(ref(s.difference_operators, c, "op"),
                                     tol);
}

double run_geom_stratification(const Scenario& s, const CheckSpec& c, double) {
  const FrameBundleModel& model = ref(s.models, c, "model");
  const auto sectors = model.stratify(arg_int(c, "point"));
  std::vector<int> sizes;
  for (const auto& sec : sectors) sizes.push_back(static_cast<int>(sec.size()));
  std::vector<int> expected = arg_ints(c, "expected_sizes");
  std::sort(sizes.begin(), sizes.end());
  std::sort(expected.begin(), expected.end());
  return sizes == expected ? 0.0 : 1.0;
}

double run_geom_probabilities(const Scenario& s, const CheckSpec& c, double) {
  const GeometryDistribution dist = indefinite_geometry_probabilities(
      ref(s.models, c, "model"), ref(s.bundle_frames, c, "frame"),
      ref(s.states, c, "omega"));
  double worst = std::abs(dist.probabilities.sum() - 1.0);
  if (c.args.contains("expected")) {
    const std::vector<double> expected = arg_doubles(c, "expected");
    if (static_cast<int>(expected.size()) != dist.probabilities.size()) {
      bad_check(c.name, "expected vector has the wrong length");
    }
    for (int i = 0; i < dist.probabilities.size(); ++i) {
      worst = std::max(worst, std::abs(dist.probabilities(i) - expected[i]));
    }
  }
  return worst;
}

double run_geom_reduced_vs_full(const Scenario& s, const CheckSpec& c,
                                double tol) {
  return reduced_vs_full_residual(
      ref(s.models, c, "model"), ref(s.bundle_frames, c, "frame"),
      ref(s.fields, c, "field"), ref(s.states, c, "omega"), tol);
}

double run_geom_gr_coupled(const Scenario& s, const CheckSpec& c, double tol) {
  const FrameBundleModel& model = ref(s.models, c, "model");
  const BundleFrame& frame = ref(s.bundle_frames, c, "frame");
  const QuantumField& field = ref(s.fields, c, "field");
  auto it = c.args.find("equations");
  if (it == c.args.end() || !it->is_object()) {
    bad_check(c.name, "missing object argument \"equations\"");
  }
  std::map<int, DifferenceOperator> equations;
  for (const auto& [sector, id] : it->items()) {
    auto op = s.difference_operators.find(id.get<std::string>());
    if (op == s.difference_operators.end()) {
      bad_check(c.name, "unresolved difference-operator reference in "
                        "\"equations\"");
    }
    equations.emplace(std::stoi(sector), op->second);
  }
  const Matrix result =
      gr_coupled_relativize(model, frame, field, equations, tol);
  const std::string reference = c.args.value("reference", "relativize");
  if (reference == "relativize") {
    return spectral_norm(result - relativize_field(field, frame));
  }
  if (reference == "zero") return spectral_norm(result);
  bad_check(c.name, "unknown reference \"" + reference + "\"");
}

double run_geom_path_observable(const Scenario& s, const CheckSpec& c,
                                double) {
  const FrameBundleModel& model = ref(s.models, c, "model");
  const LocalSection& section = ref(s.sections, c, "section");
  const QuantumField& field = ref(s.fields, c, "field");
  const State& omega = ref(s.states, c, "omega");
  PathFrame pf{arg_ints(c, "path"), std::nullopt, ref(s.povms, c, "povm")};
  if (c.args.contains("lift")) pf.lift = arg_ints(c, "lift");
  const std::string variant_name = arg_str(c, "variant");
  PathVariant variant;
  if (variant_name == "on_section") variant = PathVariant::kOnSection;
  else if (variant_name == "lifted") variant = PathVariant::kLifted;
  else if (variant_name == "indefinite_orientation")
    variant = PathVariant::kIndefiniteOrientation;
  else if (variant_name == "stationary_subgroup")
    variant = PathVariant::kStationarySubgroup;
  else bad_check(c.name, "unknown variant \"" + variant_name + "\"");
  std::optional<SubgroupInclusion> stationary;
  if (c.args.contains("stationary")) {
    stationary = ref(s.inclusions, c, "stationary");
  }
  const Matrix result = path_restricted_observable(pf, model, section, field,
                                                   omega, variant, stationary);
  if (!c.args.contains("expected")) return hermiticity_defect(result);
  return spectral_norm(result - ref(s.operators, c, "expected"));
}

double run_geom_isometry(const Scenario& s, const CheckSpec& c, double tol) {
  const IsometryReport report = isometric_frame_transform(
      ref(s.morphisms, c, "morphism"), ref(s.models, c, "model"),
      ref(s.bundle_frames, c, "from"), ref(s.bundle_frames, c, "to"),
      ref(s.fields, c, "field"), tol);
  const bool expect = c.args.value("expect_isometry", true);
  return report.residual + (report.isometry == expect ? 0.0 : 1.0);
}

using Handler = double (*)(const Scenario&, const CheckSpec&, double);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"povm_covariance", run_povm_covariance},
      {"povm_sharpness", run_povm_sharpness},
      {"born_measure", run_born_measure},
      {"povm_pushforward", run_povm_pushforward},
      {"povm_channel", run_povm_channel},
      {"ov_pairing", run_ov_pairing},
      {"ov_change_of_variables", run_ov_change_of_variables},
      {"ov_channel_interchange", run_ov_channel_interchange},
      {"qrf_duality", run_qrf_duality},
      {"qrf_invariance", run_qrf_invariance},
      {"qrf_restriction", run_qrf_restriction},
      {"qrf_localizability", run_qrf_localizability},
      {"qrf_reduction", run_qrf_reduction},
      {"qrf_external_transform", run_qrf_external_transform},
      {"qrf_origin_shift", run_qrf_origin_shift},
      {"qrf_local_observable", run_qrf_local_observable},
      {"qrf_local_observable_gauged", run_qrf_local_observable_gauged},
      {"bundle_invariance", run_bundle_invariance},
      {"bundle_localization", run_bundle_localization},
      {"bundle_reduction", run_bundle_reduction},
      {"bundle_morphism", run_bundle_morphism},
      {"bundle_local_algebra", run_bundle_local_algebra},
      {"pde_lift_duality", run_pde_lift_duality},
      {"pde_kernel", run_pde_kernel},
      {"pde_symmetry", run_pde_symmetry},
      {"geom_stratification", run_geom_stratification},
      {"geom_probabilities", run_geom_probabilities},
      {"geom_reduced_vs_full", run_geom_reduced_vs_full},
      {"geom_gr_coupled", run_geom_gr_coupled},
      {"geom_path_observable", run_geom_path_observable},
      {"geom_isometry", run_geom_isometry},
  };
  return table;
}

}  // namespace

const std::map<std::string, CheckKindInfo>& check_registry() {
  static const std::map<std::string, CheckKindInfo> table = {
      {"povm_covariance", {"measure", {{"povm", "covariant_povms"}}, {}}},
      {"povm_sharpness", {"measure", {{"povm", "povms"}}, {}}},
      {"born_measure",
       {"measure", {{"povm", "povms"}, {"omega", "states"}}, {}}},
      {"povm_pushforward",
       {"measure", {{"povm", "povms"}}, {{"omega", "states"}}}},
      {"povm_channel",
       {"measure",
        {{"povm", "povms"}, {"channel", "channels"}, {"omega", "states"}},
        {}}},
      {"ov_pairing",
       {"ov-integral",
        {{"field", "operator_fields"},
         {"povm", "povms"},
         {"rho", "states"},
         {"omega", "states"}},
        {}}},
      {"ov_change_of_variables",
       {"ov-integral",
        {{"field", "operator_fields"}, {"povm", "povms"}},
        {}}},
      {"ov_channel_interchange",
       {"ov-integral",
        {{"field", "operator_fields"},
         {"povm", "povms"},
         {"channel", "channels"}},
        {}}},
      {"qrf_duality",
       {"group-qrf",
        {{"frame", "frames"},
         {"sys_rep", "reps"},
         {"a", "operators"},
         {"rho", "states"},
         {"omega", "states"}},
        {}}},
      {"qrf_invariance",
       {"group-qrf",
        {{"frame", "frames"}, {"sys_rep", "reps"}, {"a", "operators"}},
        {}}},
      {"qrf_restriction",
       {"group-qrf",
        {{"frame", "frames"},
         {"sys_rep", "reps"},
         {"a", "operators"},
         {"omega", "states"}},
        {}}},
      {"qrf_localizability",
       {"group-qrf",
        {{"frame", "frames"}, {"sys_rep", "reps"}, {"a", "operators"}},
        {}}},
      {"qrf_reduction",
       {"group-qrf",
        {{"sub_frame", "frames"},
         {"inclusion", "inclusions"},
         {"sys_rep", "reps"},
         {"a", "operators"}},
        {}}},
      {"qrf_external_transform",
       {"group-qrf",
        {{"from", "frames"},
         {"to", "frames"},
         {"psi", "channels"},
         {"sys_rep", "reps"},
         {"a", "operators"}},
        {}}},
      {"qrf_origin_shift",
       {"group-qrf",
        {{"frame", "frames"},
         {"sys_rep", "reps"},
         {"rho", "states"},
         {"omega", "states"}},
        {}}},
      {"qrf_local_observable",
       {"group-qrf",
        {{"field", "operator_fields"},
         {"frame", "frames"},
         {"omega", "states"}},
        {}}},
      {"qrf_local_observable_gauged",
       {"group-qrf",
        {{"field", "operator_fields"},
         {"gauge_rep", "reps"},
         {"povm", "povms"},
         {"omega", "states"}},
        {}}},
      {"bundle_invariance",
       {"bundle-qrf", {{"frame", "bundle_frames"}, {"field", "fields"}}, {}}},
      {"bundle_localization",
       {"bundle-qrf",
        {{"frame", "bundle_frames"}, {"field", "fields"}},
        {{"omega", "states"}}}},
      {"bundle_reduction",
       {"bundle-qrf",
        {{"field", "fields"},
         {"sub_frame", "bundle_frames"},
         {"embedding", "embeddings"}},
        {}}},
      {"bundle_morphism",
       {"bundle-qrf",
        {{"field", "fields"},
         {"morphism", "morphisms"},
         {"from", "bundle_frames"},
         {"to", "bundle_frames"}},
        {}}},
      {"bundle_local_algebra",
       {"bundle-qrf",
        {{"field", "fields"}, {"frame", "bundle_frames"}},
        {}}},
      {"pde_lift_duality",
       {"pde-lift",
        {{"op", "difference_operators"}, {"field", "operator_fields"}},
        {}}},
      {"pde_kernel",
       {"pde-lift",
        {{"op", "difference_operators"}, {"field", "operator_fields"}},
        {}}},
      {"pde_symmetry",
       {"pde-lift",
        {{"op", "difference_operators"}, {"action", "scalar_actions"}},
        {}}},
      {"geom_stratification", {"geometry", {{"model", "models"}}, {}}},
      {"geom_probabilities",
       {"geometry",
        {{"model", "models"},
         {"frame", "bundle_frames"},
         {"omega", "states"}},
        {}}},
      {"geom_reduced_vs_full",
       {"geometry",
        {{"model", "models"},
         {"frame", "bundle_frames"},
         {"field", "fields"},
         {"omega", "states"}},
        {}}},
      {"geom_gr_coupled",
       {"geometry",
        {{"model", "models"},
         {"frame", "bundle_frames"},
         {"field", "fields"}},
        {}}},
      {"geom_path_observable",
       {"geometry",
        {{"model", "models"},
         {"section", "sections"},
         {"field", "fields"},
         {"omega", "states"},
         {"povm", "povms"}},
        {{"stationary", "inclusions"}, {"expected", "operators"}}}},
      {"geom_isometry",
       {"geometry",
        {{"morphism", "morphisms"},
         {"model", "models"},
         {"from", "bundle_frames"},
         {"to", "bundle_frames"},
         {"field", "fields"}},
        {}}},
  };
  return table;
}

void validate_check(const Scenario& s, const CheckSpec& spec) {
  auto reg = check_registry().find(spec.kind);
  if (reg == check_registry().end()) {
    bad_check(spec.name, "unknown check kind \"" + spec.kind + "\"");
  }
  auto contains = [&](const std::string& table, const std::string& id) {
    if (table == "groups") return s.groups.count(id) > 0;
    if (table == "inclusions") return s.inclusions.count(id) > 0;
    if (table == "reps") return s.reps.count(id) > 0;
    if (table == "states") return s.states.count(id) > 0;
    if (table == "operators") return s.operators.count(id) > 0;
    if (table == "channels") return s.channels.count(id) > 0;
    if (table == "povms") return s.povms.count(id) > 0;
    if (table == "covariant_povms") return s.covariant_povms.count(id) > 0;
    if (table == "frames") return s.frames.count(id) > 0;
    if (table == "operator_fields") return s.operator_fields.count(id) > 0;
    if (table == "bundles") return s.bundles.count(id) > 0;
    if (table == "sections") return s.sections.count(id) > 0;
    if (table == "bundle_frames") return s.bundle_frames.count(id) > 0;
    if (table == "fields") return s.fields.count(id) > 0;
    if (table == "embeddings") return s.embeddings.count(id) > 0;
    if (table == "morphisms") return s.morphisms.count(id) > 0;
    if (table == "difference_operators")
      return s.difference_operators.count(id) > 0;
    if (table == "scalar_actions") return s.scalar_actions.count(id) > 0;
    if (table == "models") return s.models.count(id) > 0;
    return false;
  };
  auto check_ref = [&](const std::string& key, const std::string& table) {
    const std::string id = arg_str(spec, key);
    if (!contains(table, id)) {
      bad_check(spec.name, "unresolved " + table + " reference \"" + id +
                               "\" for \"" + key + "\"");
    }
  };
  for (const auto& [key, table] : reg->second.refs) check_ref(key, table);
  for (const auto& [key, table] : reg->second.optional_refs) {
    if (spec.args.contains(key)) check_ref(key, table);
  }
  if (spec.kind == "bundle_local_algebra") {
    auto it = spec.args.find("states");
    if (it == spec.args.end() || !it->is_array()) {
      bad_check(spec.name, "missing array argument \"states\"");
    }
    for (const Json& id : *it) {
      if (!id.is_string() || !contains("states", id.get<std::string>())) {
        bad_check(spec.name, "unresolved state reference in \"states\"");
      }
    }
  }
  if (spec.kind == "geom_gr_coupled") {
    auto it = spec.args.find("equations");
    if (it == spec.args.end() || !it->is_object()) {
      bad_check(spec.name, "missing object argument \"equations\"");
    }
    for (const auto& [sector, id] : it->items()) {
      if (!id.is_string() ||
          !contains("difference_operators", id.get<std::string>())) {
        bad_check(spec.name, "unresolved difference-operator reference in "
                             "\"equations\"");
      }
    }
  }
}

Report run_scenario(const Scenario& s, const RunOptions& options) {
  Report report;
  report.digest = fnv1a_hex(s.canonical);
  for (const CheckSpec& spec : s.checks) {
    CheckResult result;
    result.name = spec.name;
    result.kind = spec.kind;
    const double tol = spec.tolerance.value_or(options.tolerance);
    const auto start = std::chrono::steady_clock::now();
    try {
      const double residual = handlers().at(spec.kind)(s, spec, tol);
      result.residual = residual;
      result.status = residual <= tol ? "pass" : "fail";
    } catch (const PreconditionError& e) {
      result.status = "precondition-error";
      result.residual = -1.0;
      result.message = e.what();
    } catch (const Error& e) {
      result.status = "fail";
      result.residual = -1.0;
      result.message = e.what();
    }
    const auto stop = std::chrono::steady_clock::now();
    result.runtime_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    if (result.status == "pass") ++report.pass;
    else if (result.status == "fail") ++report.fail;
    else ++report.precondition_errors;
    report.checks.push_back(std::move(result));
  }
  return report;
}

}  // namespace qrf
