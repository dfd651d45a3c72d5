#include <doctest.h>

#include "qrf/pde_lift.hpp"

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

/// Fourier mode f(p) = i^p · X on the 4-cycle, an eigenfunction of the
/// shift with eigenvalue i.
OperatorField fourier_mode() {
  std::vector<Matrix> values;
  Complex phase(1.0, 0.0);
  for (int p = 0; p < 4; ++p) {
    values.push_back(phase * pauli_x());
    phase *= Complex(0.0, 1.0);
  }
  return OperatorField(SampleSpace::indexed(4), std::move(values));
}

/// Cyclic rotation of the 4-cycle acting on points: p.g = p + g.
ScalarAction rotation_action() {
  const GroupPtr z4 = FiniteGroup::cyclic(4);
  std::vector<std::vector<int>> point_action;
  for (int g = 0; g < 4; ++g) {
    std::vector<int> row(4);
    for (int p = 0; p < 4; ++p) row[p] = (p + g) % 4;
    point_action.push_back(std::move(row));
  }
  return ScalarAction::from_point_action(z4, point_action);
}

}  // namespace

TEST_CASE("forward difference degenerates to zero on a single point") {
  const DifferenceOperator t = DifferenceOperator::forward_difference(1);
  CHECK(t.matrix().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("constant fields lie in the kernel of the forward difference") {
  const DifferenceOperator t = DifferenceOperator::forward_difference(4);
  const OperatorField f =
      OperatorField::constant(SampleSpace::indexed(4), pauli_z());
  const KernelReport report = kernel_membership(t, f);
  CHECK(report.member);
  CHECK(report.residual <= 1e-15);
}

TEST_CASE("a varying field is not in the kernel") {
  const DifferenceOperator t = DifferenceOperator::forward_difference(2);
  const OperatorField f(SampleSpace::indexed(2), {pauli_z(), pauli_x()});
  CHECK_FALSE(kernel_membership(t, f).member);
}

TEST_CASE("lift commutes with every matrix-unit functional") {
  const DifferenceOperator t = DifferenceOperator::forward_difference(4);
  CHECK(lift_duality_residual(t, fourier_mode()) <= 1e-14);
  Matrix random_t(3, 3);
  random_t << 1, Complex(0, 2), -0.5, 0, 1.5, Complex(1, 1), 2, 0, -1;
  const DifferenceOperator generic(SampleSpace::indexed(3), random_t);
  const OperatorField f(SampleSpace::indexed(3),
                        {pauli_z(), pauli_x(), Matrix::Identity(2, 2)});
  CHECK(lift_duality_residual(generic, f) <= 1e-14);
}

TEST_CASE("Fourier mode solves the shifted eigenvalue equation exactly") {
  // T = S − i·1 annihilates f(p) = i^p · X.
  Matrix shift = Matrix::Zero(4, 4);
  for (int p = 0; p < 4; ++p) shift(p, (p + 1) % 4) = 1.0;
  const Matrix m = shift - Complex(0, 1) * Matrix::Identity(4, 4);
  const DifferenceOperator t(SampleSpace::indexed(4), m);
  const KernelReport report = kernel_membership(t, fourier_mode());
  CHECK(report.member);
  CHECK(report.residual <= 1e-14);
}

TEST_CASE("rotations preserve the kernel of the forward difference") {
  const DifferenceOperator t = DifferenceOperator::forward_difference(4);
  CHECK(rotation_action().kernel_preservation_violation(t) <= 1e-14);
}

TEST_CASE("symmetry action on solutions round-trips through the group") {
  Matrix shift = Matrix::Zero(4, 4);
  for (int p = 0; p < 4; ++p) shift(p, (p + 1) % 4) = 1.0;
  const Matrix m = shift - Complex(0, 1) * Matrix::Identity(4, 4);
  const DifferenceOperator t(SampleSpace::indexed(4), m);
  const ScalarAction action = rotation_action();
  const OperatorField f = fourier_mode();
  const OperatorField moved = symmetry_action_on_solutions(t, action, f, 1);
  const OperatorField back = symmetry_action_on_solutions(t, action, moved, 3);
  for (int p = 0; p < 4; ++p) {
    CHECK(max_abs_diff(back.value(p), f.value(p)) <= 1e-14);
  }
  // Pull-back convention (f.g)(p) = f(p.g⁻¹): the new value at 0 is f(3).
  CHECK(max_abs_diff(moved.value(0), Matrix(Complex(0, -1) * pauli_x())) <=
        1e-14);
}

TEST_CASE("non-kernel-preserving actions are rejected up front") {
  // T = |0><0| has kernel span{e1}, which the flip does not preserve.
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  const DifferenceOperator t(SampleSpace::indexed(2), m);
  const GroupPtr z2 = FiniteGroup::cyclic(2);
  const ScalarAction flip =
      ScalarAction::from_point_action(z2, {{0, 1}, {1, 0}});
  const OperatorField f(SampleSpace::indexed(2),
                        {Matrix::Zero(2, 2), pauli_z()});
  CHECK_THROWS_AS(symmetry_action_on_solutions(t, flip, f, 1),
                  PreconditionError);
}

TEST_CASE("fields outside the kernel cannot be transported") {
  const DifferenceOperator t = DifferenceOperator::forward_difference(4);
  const ScalarAction action = rotation_action();
  CHECK_THROWS_AS(symmetry_action_on_solutions(t, action, fourier_mode(), 1),
                  Error);
}
