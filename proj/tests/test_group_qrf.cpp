#include <doctest.h>

#include "qrf/group_qrf.hpp"

using namespace qrf;

namespace {

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

UnitaryRep flip_rep(const GroupPtr& z2) {
  return UnitaryRep(z2, {Matrix::Identity(2, 2), pauli_x()});
}

Matrix proj(int n, int i) {
  Matrix m = Matrix::Zero(n, n);
  m(i, i) = 1.0;
  return m;
}

State rho_test() {
  Matrix m(2, 2);
  m << 0.75, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.25;
  return State{m};
}

/// Two-dimensional representation of the dihedral group: rotations by
/// quarter turns, reflections by conjugation with diag(1, -1).
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

}  // namespace

TEST_CASE("relativization of Z against the regular Z2 frame") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const GroupFrame frame = GroupFrame::regular(z2);
  const UnitaryRep sys = flip_rep(z2);
  const Matrix expected =
      tensor(pauli_z(), proj(2, 0)) - tensor(pauli_z(), proj(2, 1));
  CHECK(max_abs_diff(relativize(pauli_z(), frame, sys), expected) <= 1e-14);
}

TEST_CASE("duality between relative states and relativized observables") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const GroupFrame frame = GroupFrame::regular(z2);
  const UnitaryRep sys = flip_rep(z2);
  const State omega{proj(2, 0)};
  CHECK(duality_residual(rho_test(), omega, pauli_z(), frame, sys) <= 1e-14);
  const State mixed{Matrix::Identity(2, 2) / 2.0};
  CHECK(duality_residual(rho_test(), mixed, pauli_z(), frame, sys) <= 1e-14);
}

TEST_CASE("relativized observables are invariant under the diagonal action") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const GroupFrame frame = GroupFrame::regular(z2);
  const UnitaryRep sys = flip_rep(z2);
  CHECK(invariance_violation(pauli_z(), frame, sys) <= 1e-14);
}

TEST_CASE("restriction follows the exact linear localizability law") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const GroupFrame frame = GroupFrame::regular(z2);
  const UnitaryRep sys = flip_rep(z2);
  std::vector<State> family;
  const std::vector<double> ts = {1.0, 0.5, 0.25, 0.125};
  for (double t : ts) {
    Matrix m = t / 2.0 * Matrix::Identity(2, 2);
    m(0, 0) += 1.0 - t;
    family.push_back(State{m});
  }
  const std::vector<double> errors =
      localizability_probe(pauli_z(), frame, sys, family);
  for (size_t i = 0; i < ts.size(); ++i) {
    CHECK(errors[i] == doctest::Approx(ts[i]).epsilon(1e-12));
  }
}

TEST_CASE("D4 duality and invariance") {
  const SemidirectProduct d4 = SemidirectProduct::dihedral(4);
  const GroupFrame frame = GroupFrame::regular(d4.product());
  const UnitaryRep sys = d4_rep(d4);
  const State ground{proj(8, 0)};
  CHECK(duality_residual(rho_test(), ground, pauli_z(), frame, sys) <= 1e-13);
  CHECK(invariance_violation(pauli_z(), frame, sys) <= 1e-13);
}

TEST_CASE("frame reduction along a subgroup inclusion") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const GroupPtr z4 = FiniteGroup::cyclic(4);
  const SubgroupInclusion inc(z2, z4, {0, 2});
  const GroupFrame sub = GroupFrame::regular(z2);
  Matrix u(2, 2);
  u << 1, 0, 0, Complex(0, 1);
  std::vector<Matrix> mats;
  Matrix m = Matrix::Identity(2, 2);
  for (int t = 0; t < 4; ++t) {
    mats.push_back(m);
    m = m * u;
  }
  const UnitaryRep sys(z4, mats);
  CHECK(reduction_residual(pauli_x(), sub, inc, sys) <= 1e-14);

  const GroupFrame reduced = reduce_frame(sub, inc);
  CHECK(reduced.group() == z4);
  CHECK_FALSE(reduced.frame_rep().has_value());
  // Effects off the image are zero; on the image they are transported.
  CHECK(spectral_norm(reduced.observable().effect(1)) <= 1e-15);
  CHECK(spectral_norm(reduced.observable().effect(3)) <= 1e-15);
}

TEST_CASE("external frame transformation identity and its preconditions") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const GroupFrame frame = GroupFrame::regular(z2);
  const UnitaryRep sys = flip_rep(z2);
  // psi = conjugation by X maps the basis projectors to their swap.
  const Channel psi = Channel::unitary(pauli_x());
  const Povm flipped(SampleSpace::indexed(2), {proj(2, 1), proj(2, 0)});
  const GroupFrame frame2(z2, flipped, UnitaryRep::regular(z2));
  CHECK(external_frame_transform_residual(pauli_z(), frame, frame2, psi,
                                          sys) <= 1e-14);
  // Conjugation by Z fixes the basis projectors, so the flipped frame is not
  // psi ∘ E and the precondition must fire.
  const Channel wrong = Channel::unitary(pauli_z());
  CHECK_THROWS_AS(external_frame_transform_residual(pauli_z(), frame, frame2,
                                                    wrong, sys),
                  PreconditionError);
}

TEST_CASE("relative states are origin-shift covariant") {
  const GroupPtr z4 = FiniteGroup::cyclic(4);
  Matrix u(2, 2);
  u << 1, 0, 0, Complex(0, 1);
  std::vector<Matrix> mats;
  Matrix m = Matrix::Identity(2, 2);
  for (int t = 0; t < 4; ++t) {
    mats.push_back(m);
    m = m * u;
  }
  const UnitaryRep sys(z4, mats);
  Eigen::VectorXd mu(4);
  mu << 0.4, 0.3, 0.2, 0.1;
  const int g = 1;
  Eigen::VectorXd shifted(4);
  for (int x = 0; x < 4; ++x) shifted(x) = mu(z4->op(x, z4->inverse(g)));
  const State lhs = relative_state_classical(rho_test(), shifted, sys);
  const State rhs =
      relative_state_classical(sys.act_on_state(g, rho_test()), mu, sys);
  CHECK(max_abs_diff(lhs.op(), rhs.op()) <= 1e-14);
}

TEST_CASE("relational local observable matches the dense Born sum") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const GroupFrame frame = GroupFrame::regular(z2);
  const OperatorField field(SampleSpace::indexed(2), {pauli_z(), pauli_x()});
  const State omega{Matrix::Identity(2, 2) / 2.0};
  const Matrix local = relational_local_observable(field, frame, omega);
  const Matrix expected = 0.5 * pauli_z() + 0.5 * pauli_x();
  CHECK(max_abs_diff(local, expected) <= 1e-14);
}

TEST_CASE("gauged relational local observable averages over the gauge orbit") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const UnitaryRep gauge = flip_rep(z2);
  const OperatorField field(SampleSpace::indexed(2), {pauli_z(), pauli_z()});
  const Povm product = Povm::ideal(SampleSpace::indexed(4));
  const State omega{Matrix::Identity(4, 4) / 4.0};
  // Uniform over gauge orbits: (Z + XZX)/2 = 0 at every translation point.
  const Matrix local =
      relational_local_observable_gauged(field, gauge, product, omega);
  CHECK(spectral_norm(local) <= 1e-14);
}
