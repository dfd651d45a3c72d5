#include <doctest.h>

#include "qrf/bundle_qrf.hpp"
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

Matrix proj(int n, int i) {
  Matrix m = Matrix::Zero(n, n);
  m(i, i) = 1.0;
  return m;
}

UnitaryRep flip_rep(const GroupPtr& z2) {
  return UnitaryRep(z2, {Matrix::Identity(2, 2), pauli_x()});
}

/// Non-product presentation of a Z2 bundle over {a, b} with interleaved
/// fibers, mirroring the twisted corpus file.
BundlePtr twisted_bundle(const GroupPtr& z2) {
  return std::make_shared<const PrincipalBundle>(
      std::vector<std::string>{"a", "b"},
      std::vector<std::string>{"u", "v", "w", "x"}, z2,
      std::vector<int>{0, 1, 0, 1},
      std::vector<std::vector<int>>{{0, 2}, {1, 3}, {2, 0}, {3, 1}});
}

}  // namespace

TEST_CASE("trivial bundle structure") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const BundlePtr b = PrincipalBundle::trivial({"p", "q"}, z2);
  CHECK(b->total_size() == 4);
  CHECK(b->proj(3) == 1);
  CHECK(b->act(0, 1) == 1);
  CHECK(b->fiber(1) == std::vector<int>{2, 3});
}

TEST_CASE("bundle validation rejects a non-free action") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  CHECK_THROWS_AS(
      PrincipalBundle({"p"}, {"p0", "p1"}, z2, {0, 0},
                      {{0, 0}, {1, 1}}),
      Error);
}

TEST_CASE("orientation aligns bundle points with the section") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const BundlePtr b = PrincipalBundle::trivial({"p", "q"}, z2);
  const LocalSection sigma(b, {0, 1}, {{0, 0}, {1, 2}});
  CHECK(orientation(*b, sigma, 0) == 0);
  CHECK(orientation(*b, sigma, 1) == 1);
  CHECK(orientation(*b, sigma, 2) == 0);
}

TEST_CASE("ideal bundle frame is covariant") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const BundlePtr b = PrincipalBundle::trivial({"p", "q"}, z2);
  const LocalSection sigma(b, {0, 1}, {{0, 0}, {1, 2}});
  const BundleFrame frame = BundleFrame::ideal(b, sigma);
  CHECK(frame.covariance_violation() <= 1e-14);
}

TEST_CASE("relativized field over a single-point base") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const BundlePtr b = PrincipalBundle::trivial({"p"}, z2);
  const LocalSection sigma(b, {0}, {{0, 0}});
  const BundleFrame frame = BundleFrame::ideal(b, sigma);
  const QuantumField field({{0, pauli_z()}}, flip_rep(z2));
  const Matrix expected = tensor(pauli_z(), proj(2, 0)) +
                          tensor(Matrix(-pauli_z()), proj(2, 1));
  CHECK(max_abs_diff(relativize_field(field, frame), expected) <= 1e-14);
  CHECK(field_invariance_violation(field, frame) <= 1e-14);
}

TEST_CASE("restriction to a section delta-state localizes the field") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const BundlePtr b = PrincipalBundle::trivial({"p", "q"}, z2);
  const LocalSection sigma(b, {0, 1}, {{0, 0}, {1, 2}});
  const BundleFrame frame = BundleFrame::ideal(b, sigma);
  const QuantumField field({{0, pauli_z()}, {1, pauli_x()}}, flip_rep(z2));
  for (int p = 0; p < 2; ++p) {
    const State delta{proj(4, frame.region_index(sigma.at(p)))};
    CHECK(max_abs_diff(restrict_field(field, frame, delta), field.value(p)) <=
          1e-14);
  }
}

TEST_CASE("twisted presentation behaves identically") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const BundlePtr b = twisted_bundle(z2);
  const LocalSection sigma(b, {0, 1}, {{0, 2}, {1, 1}});
  const BundleFrame frame = BundleFrame::ideal(b, sigma);
  const QuantumField field({{0, pauli_z()}, {1, pauli_x()}}, flip_rep(z2));
  CHECK(field_invariance_violation(field, frame) <= 1e-14);
  const State delta{proj(4, frame.region_index(2))};
  CHECK(max_abs_diff(restrict_field(field, frame, delta), pauli_z()) <=
        1e-14);
}

TEST_CASE("sub-bundle reduction identity") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const GroupPtr z4 = FiniteGroup::cyclic(4);
  const BundlePtr parent = PrincipalBundle::trivial({"m"}, z4);
  const BundlePtr sub = PrincipalBundle::trivial({"m"}, z2);
  const SubgroupInclusion inc(z2, z4, {0, 2});
  const BundleEmbedding emb(sub, parent, inc, {0, 2}, {0});
  const LocalSection sub_sigma(sub, {0}, {{0, 0}});
  const BundleFrame sub_frame = BundleFrame::ideal(sub, sub_sigma);
  Matrix u(2, 2);
  u << 1, 0, 0, Complex(0, 1);
  std::vector<Matrix> mats;
  Matrix m = Matrix::Identity(2, 2);
  for (int t = 0; t < 4; ++t) {
    mats.push_back(m);
    m = m * u;
  }
  const QuantumField field({{0, pauli_x()}}, UnitaryRep(z4, mats));
  CHECK(bundle_reduction_residual(field, sub_frame, emb) <= 1e-14);

  const BundleFrame reduced = reduce_bundle_frame(sub_frame, emb);
  CHECK(reduced.bundle() == parent);
  CHECK_FALSE(reduced.frame_rep().has_value());
}

TEST_CASE("relational local algebra of the (Z, X) two-point example") {
  const GroupPtr triv = FiniteGroup::trivial();
  const BundlePtr b = PrincipalBundle::trivial({"p", "q"}, triv);
  const LocalSection sigma(b, {0, 1}, {{0, 0}, {1, 1}});
  const BundleFrame frame = BundleFrame::ideal(b, sigma);
  const QuantumField field({{0, pauli_z()}, {1, pauli_x()}},
                           UnitaryRep::trivial(triv, 2));
  const std::vector<State> deltas = {State{proj(2, 0)}, State{proj(2, 1)}};
  const AlgebraReport report = relational_local_algebra(field, frame, deltas);
  CHECK(report.span_dim == 2);
  CHECK(report.closure_dim == 4);
}

TEST_CASE("gauge-change frame morphism satisfies the transformation identity") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const BundlePtr b = PrincipalBundle::trivial({"p", "q"}, z2);
  const LocalSection s1(b, {0, 1}, {{0, 0}, {1, 2}});
  const LocalSection s2(b, {0, 1}, {{0, 1}, {1, 3}});
  const BundleFrame f1 = BundleFrame::ideal(b, s1);
  const BundleFrame f2 = BundleFrame::ideal(b, s2);
  // theta = fiberwise translation by the nontrivial element.
  std::map<int, int> theta = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  Matrix v = Matrix::Zero(4, 4);
  for (const auto& [x, y] : theta) v(y, x) = 1.0;
  const FrameMorphism gauge(Channel::unitary(v.adjoint()), theta);
  const QuantumField field({{0, pauli_z()}, {1, pauli_x()}}, flip_rep(z2));
  CHECK(frame_morphism_residual(field, gauge, f1, f2) <= 1e-14);

  const auto base = base_map_of(gauge, f1, f2);
  CHECK(base.at(0) == 0);
  CHECK(base.at(1) == 1);
}

TEST_CASE("non-fiber-preserving morphisms are rejected") {
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const BundlePtr b = PrincipalBundle::trivial({"p", "q"}, z2);
  const LocalSection sigma(b, {0, 1}, {{0, 0}, {1, 2}});
  const BundleFrame frame = BundleFrame::ideal(b, sigma);
  // Sends one point of the fiber over p to the fiber over q.
  std::map<int, int> theta = {{0, 0}, {1, 2}, {2, 1}, {3, 3}};
  const FrameMorphism broken(Channel::identity(4), theta);
  CHECK_THROWS_AS(base_map_of(broken, frame, frame), PreconditionError);
}

TEST_CASE("operator span dimension") {
  const std::vector<Matrix> ops = {pauli_z(), Matrix(2.0 * pauli_z()),
                                   pauli_x()};
  CHECK(operator_span_dim(ops) == 2);
}
