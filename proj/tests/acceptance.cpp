// End-to-end acceptance gate: each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero when any criterion fails.

#include <sys/wait.h>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qrf/checks.hpp"
#include "qrf/geometry.hpp"
#include "qrf/group_qrf.hpp"
#include "qrf/pde_lift.hpp"
#include "qrf/scenario.hpp"

using namespace qrf;

namespace {

constexpr double kTol = 1e-10;

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix proj(int n, int i) {
  Matrix m = Matrix::Zero(n, n);
  m(i, i) = 1.0;
  return m;
}

Matrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return g;
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  return (g + g.adjoint()) / 2.0;
}

State random_state(int dim, std::mt19937_64& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return State(std::move(rho));
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
  const Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim, rng));
  return qr.householderQ() * Matrix::Identity(dim, dim);
}

/// Random POVM: positive seeds A_x whitened by the inverse square root of
/// their sum, so the effects are positive and sum to the identity.
Povm random_povm(int outcomes, int dim, std::mt19937_64& rng) {
  std::vector<Matrix> seeds;
  Matrix sum = Matrix::Zero(dim, dim);
  for (int x = 0; x < outcomes; ++x) {
    const Matrix g = ginibre(dim, dim, rng);
    seeds.push_back(g * g.adjoint());
    sum += seeds.back();
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(sum);
  const Matrix inv_sqrt =
      eig.eigenvectors() *
      eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      eig.eigenvectors().adjoint();
  std::vector<Matrix> effects;
  for (const Matrix& a : seeds) effects.push_back(inv_sqrt * a * inv_sqrt);
  return Povm(SampleSpace::indexed(outcomes), std::move(effects));
}

UnitaryRep flip_rep(const GroupPtr& z2) {
  return UnitaryRep(z2, {Matrix::Identity(2, 2), pauli_x()});
}

UnitaryRep d4_rep(const SemidirectProduct& d4) {
  Matrix r(2, 2), f(2, 2);
  r << 0, -1, 1, 0;
  f << 1, 0, 0, -1;
  std::vector<Matrix> mats;
  for (int g = 0; g < 8; ++g) {
    const auto [t, l] = d4.factorize(g);
    Matrix m = Matrix::Identity(2, 2);
    for (int k = 0; k < t; ++k) m = m * r;
    if (l == 1) m = m * f;
    mats.push_back(std::move(m));
  }
  return UnitaryRep(d4.product(), std::move(mats));
}

UnitaryRep z4_phase_rep(const GroupPtr& z4) {
  Matrix u(2, 2);
  u << 1, 0, 0, Complex(0, 1);
  std::vector<Matrix> mats;
  Matrix m = Matrix::Identity(2, 2);
  for (int t = 0; t < 4; ++t) {
    mats.push_back(m);
    m = m * u;
  }
  return UnitaryRep(z4, std::move(mats));
}

OperatorField fourier_mode() {
  std::vector<Matrix> values;
  Complex phase(1.0, 0.0);
  for (int p = 0; p < 4; ++p) {
    values.push_back(phase * pauli_x());
    phase *= Complex(0.0, 1.0);
  }
  return OperatorField(SampleSpace::indexed(4), std::move(values));
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(QRFKIT_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// ---------------------------------------------------------------------------

bool criterion_integration() {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 120; ++trial) {
    const int outcomes = 2 + trial % 7;  // 2 .. 8
    const int field_dim = 2 + trial % 3;  // 2 .. 4
    const int povm_dim = 2 + (trial / 3) % 3;

    std::vector<Matrix> values, extra;
    for (int x = 0; x < outcomes; ++x) {
      values.push_back(random_hermitian(field_dim, rng));
      extra.push_back(random_hermitian(field_dim, rng));
    }
    const OperatorField f(SampleSpace::indexed(outcomes), values);
    const OperatorField g(SampleSpace::indexed(outcomes), extra);
    const Povm e = random_povm(outcomes, povm_dim, rng);

    const State rho = random_state(field_dim, rng);
    const State omega = random_state(povm_dim, rng);
    if (pairing_residual(f, e, rho, omega) > kTol) return false;

    // Change of variables along a random map into the field's space.
    const int pre_outcomes = 2 + (trial / 2) % 5;
    const Povm e2 = random_povm(pre_outcomes, povm_dim, rng);
    std::uniform_int_distribution<int> pick(0, outcomes - 1);
    std::vector<int> phi(pre_outcomes);
    for (int& v : phi) v = pick(rng);
    if (change_of_variables_residual(f, phi, e2) > kTol) return false;

    const Channel psi = Channel::unitary(random_unitary(povm_dim, rng));
    if (channel_interchange_residual(f, e, psi) > kTol) return false;
    if (channel_interchange_residual(f, e, Channel::depolarizing(povm_dim)) >
        kTol) {
      return false;
    }

    // Bilinearity of the integral in the field argument.
    std::vector<Matrix> combo;
    for (int x = 0; x < outcomes; ++x) {
      combo.push_back(2.5 * values[x] + extra[x]);
    }
    const OperatorField fc(SampleSpace::indexed(outcomes), combo);
    const Matrix lhs = ov_integrate(fc, e);
    const Matrix rhs = 2.5 * ov_integrate(f, e) + ov_integrate(g, e);
    if (max_abs_diff(lhs, rhs) > kTol) return false;
  }
  return true;
}

bool criterion_group_frames() {
  // Two-element translation frame.
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const GroupFrame frame2 = GroupFrame::regular(z2);
  const UnitaryRep sys2 = flip_rep(z2);
  Matrix rho_m(2, 2);
  rho_m << 0.75, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.25;
  const State rho{rho_m};
  const State ground{proj(2, 0)};
  if (duality_residual(rho, ground, pauli_z(), frame2, sys2) > kTol)
    return false;
  if (invariance_violation(pauli_z(), frame2, sys2) > kTol) return false;
  // Restriction through the frame state reproduces the direct average.
  const Matrix gamma = restrict_observable(pauli_z(), ground, frame2, sys2);
  if (max_abs_diff(gamma, pauli_z()) > kTol) return false;

  // Eight-element dihedral frame with a two-dimensional system.
  const SemidirectProduct d4 = SemidirectProduct::dihedral(4);
  const GroupFrame frame8 = GroupFrame::regular(d4.product());
  const UnitaryRep sys8 = d4_rep(d4);
  const State uniform{Matrix::Identity(8, 8) / 8.0};
  if (duality_residual(rho, uniform, pauli_z(), frame8, sys8) > kTol)
    return false;
  if (invariance_violation(pauli_z(), frame8, sys8) > kTol) return false;

  // Reduction along the rotation subgroup of the dihedral frame.
  const GroupPtr z4 = FiniteGroup::cyclic(4);
  std::vector<int> embed;
  for (int t = 0; t < 4; ++t) embed.push_back(d4.element(t, 0));
  const SubgroupInclusion inc(z4, d4.product(), embed);
  const GroupFrame frame4 = GroupFrame::regular(z4);
  if (reduction_residual(pauli_z(), frame4, inc, sys8) > kTol) return false;

  // External frame change by conjugation with the flip.
  const Channel psi = Channel::unitary(pauli_x());
  const Povm flipped(SampleSpace::indexed(2), {proj(2, 1), proj(2, 0)});
  const GroupFrame frame2b(z2, flipped, UnitaryRep::regular(z2));
  if (external_frame_transform_residual(pauli_z(), frame2, frame2b, psi,
                                        sys2) > kTol) {
    return false;
  }

  // Origin shift of the classical relative state.
  const UnitaryRep sys4 = z4_phase_rep(z4);
  Eigen::VectorXd mu(4);
  mu << 0.4, 0.3, 0.2, 0.1;
  for (int g = 0; g < 4; ++g) {
    Eigen::VectorXd shifted(4);
    for (int x = 0; x < 4; ++x) shifted(x) = mu(z4->op(x, z4->inverse(g)));
    const State lhs = relative_state_classical(rho, shifted, sys4);
    const State rhs =
        relative_state_classical(sys4.act_on_state(g, rho), mu, sys4);
    if (max_abs_diff(lhs.op(), rhs.op()) > kTol) return false;
  }
  return true;
}

bool criterion_localizability() {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const GroupFrame frame = GroupFrame::regular(z2);
  const UnitaryRep sys = flip_rep(z2);
  const std::vector<double> ts = {1.0, 0.5, 0.25, 0.125};
  std::vector<State> family;
  for (double t : ts) {
    Matrix m = t / 2.0 * Matrix::Identity(2, 2);
    m(0, 0) += 1.0 - t;
    family.push_back(State{m});
  }
  const std::vector<double> errors =
      localizability_probe(pauli_z(), frame, sys, family);
  for (size_t i = 0; i < ts.size(); ++i) {
    if (std::abs(errors[i] - ts[i]) > 1e-12) return false;
  }
  return true;
}

bool criterion_bundles() {
  const GroupPtr z2 = FiniteGroup::cyclic(2);

  // Product bundle over two points.
  const BundlePtr b = PrincipalBundle::trivial({"p", "q"}, z2);
  const LocalSection s1(b, {0, 1}, {{0, 0}, {1, 2}});
  const LocalSection s2(b, {0, 1}, {{0, 1}, {1, 3}});
  const BundleFrame f1 = BundleFrame::ideal(b, s1);
  const BundleFrame f2 = BundleFrame::ideal(b, s2);
  const QuantumField field({{0, pauli_z()}, {1, pauli_x()}}, flip_rep(z2));
  if (field_invariance_violation(field, f1) > kTol) return false;
  for (int p = 0; p < 2; ++p) {
    const State delta{proj(4, f1.region_index(s1.at(p)))};
    if (max_abs_diff(restrict_field(field, f1, delta), field.value(p)) > kTol)
      return false;
  }

  auto conjugation_for = [](const std::map<int, int>& theta) {
    Matrix v = Matrix::Zero(4, 4);
    for (const auto& [x, y] : theta) v(y, x) = 1.0;
    return Channel::unitary(v.adjoint());
  };

  // Gauge change: fiberwise translation onto the shifted section.
  const std::map<int, int> gauge_theta = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  const FrameMorphism gauge(conjugation_for(gauge_theta), gauge_theta);
  if (frame_morphism_residual(field, gauge, f1, f2) > kTol) return false;

  // Relocation: swap the two base points; the constant-section frame is
  // carried onto itself.
  const std::map<int, int> swap_theta = {{0, 2}, {1, 3}, {2, 0}, {3, 1}};
  const FrameMorphism swap(conjugation_for(swap_theta), swap_theta);
  const QuantumField constant({{0, pauli_z()}, {1, pauli_z()}}, flip_rep(z2));
  if (frame_morphism_residual(constant, swap, f1, f1) > kTol) return false;

  // Frame swap: gauge change composed with relocation.
  const std::map<int, int> swap_gauge = {{0, 3}, {1, 2}, {2, 1}, {3, 0}};
  const FrameMorphism both(conjugation_for(swap_gauge), swap_gauge);
  if (frame_morphism_residual(constant, both, f1, f2) > kTol) return false;

  // Non-product presentation with interleaved fibers.
  const BundlePtr tw = std::make_shared<const PrincipalBundle>(
      std::vector<std::string>{"a", "b"},
      std::vector<std::string>{"u", "v", "w", "x"}, z2,
      std::vector<int>{0, 1, 0, 1},
      std::vector<std::vector<int>>{{0, 2}, {1, 3}, {2, 0}, {3, 1}});
  const LocalSection tws(tw, {0, 1}, {{0, 2}, {1, 1}});
  const BundleFrame twf = BundleFrame::ideal(tw, tws);
  if (field_invariance_violation(field, twf) > kTol) return false;
  const State delta{proj(4, twf.region_index(2))};
  if (max_abs_diff(restrict_field(field, twf, delta), pauli_z()) > kTol)
    return false;

  // Local algebra of the two-point (Z, X) field closes from 2 to 4.
  const GroupPtr triv = FiniteGroup::trivial();
  const BundlePtr tb = PrincipalBundle::trivial({"p", "q"}, triv);
  const LocalSection tsec(tb, {0, 1}, {{0, 0}, {1, 1}});
  const BundleFrame tframe = BundleFrame::ideal(tb, tsec);
  const QuantumField tfield({{0, pauli_z()}, {1, pauli_x()}},
                            UnitaryRep::trivial(triv, 2));
  const AlgebraReport algebra = relational_local_algebra(
      tfield, tframe, {State{proj(2, 0)}, State{proj(2, 1)}});
  return algebra.span_dim == 2 && algebra.closure_dim == 4;
}

bool criterion_pde() {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;  // 2 .. 6
    const int d = 2 + trial % 3;
    const DifferenceOperator t(SampleSpace::indexed(n), ginibre(n, n, rng));
    std::vector<Matrix> values;
    for (int p = 0; p < n; ++p) values.push_back(random_hermitian(d, rng));
    const OperatorField f(SampleSpace::indexed(n), values);
    if (lift_duality_residual(t, f) > kTol) return false;
  }
  const DifferenceOperator fd = DifferenceOperator::forward_difference(4);
  const OperatorField constant =
      OperatorField::constant(SampleSpace::indexed(4), pauli_z());
  if (!kernel_membership(fd, constant).member) return false;
  Matrix shift = Matrix::Zero(4, 4);
  for (int p = 0; p < 4; ++p) shift(p, (p + 1) % 4) = 1.0;
  const DifferenceOperator eigen_eq(
      SampleSpace::indexed(4),
      Matrix(shift - Complex(0, 1) * Matrix::Identity(4, 4)));
  const KernelReport mode = kernel_membership(eigen_eq, fourier_mode());
  return mode.member && mode.residual <= 1e-12;
}

bool criterion_geometry() {
  const GroupPtr s3 = FiniteGroup::symmetric(3);
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const BundlePtr bundle = PrincipalBundle::trivial({"m"}, s3);
  const LocalSection ref(bundle, {0}, {{0, 0}});
  const FrameBundleModel model(bundle, SubgroupInclusion(z2, s3, {0, 2}), ref);
  if (model.num_sectors() != 3) return false;
  const auto sectors = model.stratify(0);
  if (sectors[0] != std::vector<int>{0, 2}) return false;
  if (sectors[1] != std::vector<int>{1, 4}) return false;
  if (sectors[2] != std::vector<int>{3, 5}) return false;

  const BundleFrame frame = BundleFrame::ideal(bundle, ref);
  const State mixed{Matrix::Identity(6, 6) / 6.0};
  const GeometryDistribution uniform =
      indefinite_geometry_probabilities(model, frame, mixed);
  for (int a = 0; a < 3; ++a) {
    if (std::abs(uniform.probabilities(a) - 1.0 / 3.0) > kTol) return false;
  }
  Matrix split_m = Matrix::Zero(6, 6);
  split_m(0, 0) = 0.5;
  split_m(1, 1) = 0.5;
  const GeometryDistribution split =
      indefinite_geometry_probabilities(model, frame, State{split_m});
  if (std::abs(split.probabilities(0) - 0.5) > kTol) return false;
  if (std::abs(split.probabilities(1) - 0.5) > kTol) return false;
  if (std::abs(split.probabilities(2)) > kTol) return false;

  // Reduced computation against the full one on a sector-supported state.
  std::vector<int> p = {0, 1, 2};
  std::vector<Matrix> mats;
  do {
    Matrix m = Matrix::Zero(3, 3);
    for (int j = 0; j < 3; ++j) m(p[j], j) = 1.0;
    mats.push_back(std::move(m));
  } while (std::next_permutation(p.begin(), p.end()));
  const UnitaryRep perm_rep(s3, std::move(mats));
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  a(2, 2) = 3.0;
  const QuantumField field({{0, a}}, perm_rep);
  Matrix sector_state = Matrix::Zero(6, 6);
  sector_state(0, 0) = 0.5;
  sector_state(2, 2) = 0.5;
  return reduced_vs_full_residual(model, frame, field, State{sector_state}) <=
         kTol;
}

bool criterion_cli() {
  namespace fs = std::filesystem;
  const std::string scenarios = SCENARIOS_DIR;
  const fs::path tmp = fs::temp_directory_path() / "qrfkit-acceptance";
  fs::create_directories(tmp);

  // Determinism: two independent runs write byte-identical reports.
  const std::string r1 = (tmp / "r1.json").string();
  const std::string r2 = (tmp / "r2.json").string();
  if (run_cli("--report " + r1 + " check " + scenarios + "/z2_flip.json") != 0)
    return false;
  if (run_cli("--report " + r2 + " check " + scenarios + "/z2_flip.json") != 0)
    return false;
  const std::string body = slurp(r1);
  if (body.empty() || body != slurp(r2)) return false;

  // Every bundled scenario passes end to end.
  int passing = 0;
  for (const auto& entry : fs::directory_iterator(scenarios)) {
    const std::string file = entry.path().filename().string();
    if (entry.path().extension() != ".json") continue;
    if (file.rfind("broken_", 0) == 0) continue;
    if (run_cli("check " + entry.path().string()) != 0) return false;
    ++passing;
  }
  if (passing < 10) return false;

  // Negative fixtures: a failing check exits 1, a malformed file exits 2.
  if (run_cli("check " + scenarios + "/broken_covariance.json") != 1)
    return false;
  if (run_cli("check " + scenarios + "/broken_normalization.json") != 2)
    return false;
  return true;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool()>>> criteria = {
      {"randomized operator-valued integration identities", criterion_integration},
      {"group-frame relativization, restriction and transforms", criterion_group_frames},
      {"exact linear localizability law", criterion_localizability},
      {"bundle frames, morphisms and local algebras", criterion_bundles},
      {"difference-operator lifts and kernel transport", criterion_pde},
      {"sector stratification and indefinite-metric probabilities", criterion_geometry},
      {"deterministic command-line verification runs", criterion_cli},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    bool ok = false;
    std::string note;
    try {
      ok = criteria[i].second();
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
              << criteria[i].first << note << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
