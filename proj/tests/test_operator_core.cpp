#include <doctest.h>

#include "qrf/operator_core.hpp"

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

}  // namespace

TEST_CASE("tensor follows the (system, frame) row-major convention") {
  const Matrix t = tensor(pauli_z(), pauli_x());
  // (Z ⊗ X)[i*2+k, j*2+l] = Z[i,j] X[k,l]
  Matrix expected(4, 4);
  expected << 0, 1, 0, 0,  //
      1, 0, 0, 0,          //
      0, 0, 0, -1,         //
      0, 0, -1, 0;
  CHECK(max_abs_diff(t, expected) <= 1e-15);
}

TEST_CASE("tensor dimension cap") {
  const Matrix big = Matrix::Identity(70, 70);
  CHECK_THROWS_AS(tensor(big, big), Error);
}

TEST_CASE("partial trace inverts tensoring against the other factor") {
  Matrix rho(2, 2), omega(3, 3);
  rho << 0.75, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.25;
  omega = Matrix::Zero(3, 3);
  omega(0, 0) = 0.5;
  omega(1, 1) = 0.25;
  omega(2, 2) = 0.25;
  const Matrix joint = tensor(rho, omega);
  CHECK(max_abs_diff(partial_trace(joint, 1, {2, 3}), rho) <= 1e-14);
  CHECK(max_abs_diff(partial_trace(joint, 0, {2, 3}), omega) <= 1e-14);
}

TEST_CASE("state validation") {
  Matrix bad(2, 2);
  bad << 1.5, 0, 0, -0.5;  // unit trace but not positive
  CHECK_THROWS_AS(State{bad}, Error);
  Matrix unnormalized = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(State{unnormalized}, Error);
  CHECK_NOTHROW(State{Matrix::Identity(2, 2) / 2.0});
}

TEST_CASE("effect validation rejects spectrum above one") {
  Matrix over = 1.5 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(Effect{over}, Error);
  CHECK_NOTHROW(Effect{0.5 * Matrix::Identity(2, 2)});
}

TEST_CASE("norms and eigenvalue bounds") {
  CHECK(spectral_norm(pauli_z()) == doctest::Approx(1.0));
  Matrix d(2, 2);
  d << -1, 0, 0, 5;
  CHECK(min_eigenvalue(d) == doctest::Approx(-1.0));
  CHECK(max_eigenvalue(d) == doctest::Approx(5.0));
  CHECK(hermiticity_defect(pauli_x()) <= 1e-15);
}

TEST_CASE("channel completeness is enforced") {
  CHECK_THROWS_AS(Channel({0.5 * Matrix::Identity(2, 2)}), Error);
  CHECK_NOTHROW(Channel::unitary(pauli_x()));
}

TEST_CASE("depolarizing channel maps every state to the maximally mixed one") {
  const Channel depol = Channel::depolarizing(2);
  Matrix rho(2, 2);
  rho << 0.9, 0.1, 0.1, 0.1;
  CHECK(max_abs_diff(depol.schrodinger(rho), Matrix::Identity(2, 2) / 2.0) <=
        1e-14);
}

TEST_CASE("Heisenberg and Schrodinger pictures are trace-dual") {
  const Channel psi = Channel::unitary(pauli_x());
  Matrix rho(2, 2), a(2, 2);
  rho << 0.75, 0.25, 0.25, 0.25;
  a << 2, Complex(0, 1), Complex(0, -1), -1;
  const Complex lhs = (psi.schrodinger(rho) * a).trace();
  const Complex rhs = (rho * psi.heisenberg(a)).trace();
  CHECK(std::abs(lhs - rhs) <= 1e-14);
}

TEST_CASE("heisenberg_on_second acts only on the frame factor") {
  const Channel psi = Channel::unitary(pauli_x());
  const Matrix joint = tensor(pauli_z(), pauli_z());
  const Matrix expected = tensor(pauli_z(), psi.heisenberg(pauli_z()));
  CHECK(max_abs_diff(psi.heisenberg_on_second(joint, 2), expected) <= 1e-14);
}
