#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qrf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Default tolerance for all identity checks; scenario files may override.
inline constexpr double kDefaultTol = 1e-10;

/// Hard cap on tensor-product dimension.
inline constexpr int kMaxProductDim = 4096;

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a stated precondition fails (reported distinctly from a
/// residual that merely exceeds tolerance).
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

bool all_finite(const Matrix& m);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

double hermiticity_defect(const Matrix& m);

/// Smallest eigenvalue of a Hermitian matrix. Uses a Gershgorin bound as a
/// cheap pre-check for dim > 64 and falls back to a full eigensolve only
/// when the bound is inconclusive.
double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);

/// Kronecker product with the fixed (system, frame) row-major convention:
/// (a ⊗ b)[i*db + k, j*db + l] = a[i,j] * b[k,l].
Matrix tensor(const Matrix& a, const Matrix& b);

/// Trace out one factor of a dims.first ⊗ dims.second composite.
/// which = 0 traces the first factor, which = 1 the second.
Matrix partial_trace(const Matrix& a, int which, std::pair<int, int> dims);

class State;

/// Density operator: Hermitian, positive semidefinite, unit trace.
class State {
 public:
  explicit State(Matrix op, double tol = kDefaultTol);

  /// Skips validation; for internal intermediates known valid by construction.
  static State unchecked(Matrix op);

  const Matrix& op() const { return op_; }
  int dim() const { return static_cast<int>(op_.rows()); }

 private:
  struct UncheckedTag {};
  State(Matrix op, UncheckedTag) : op_(std::move(op)) {}
  Matrix op_;
};

/// Effect operator: Hermitian with spectrum in [0, 1].
class Effect {
 public:
  explicit Effect(Matrix op, double tol = kDefaultTol);
  static Effect unchecked(Matrix op);

  const Matrix& op() const { return op_; }
  int dim() const { return static_cast<int>(op_.rows()); }

 private:
  struct UncheckedTag {};
  Effect(Matrix op, UncheckedTag) : op_(std::move(op)) {}
  Matrix op_;
};

/// Trace-preserving completely positive map in Kraus form.
/// Kraus operators are dim_out × dim_in; completeness Σ K†K = 1 is enforced
/// at construction.
class Channel {
 public:
  explicit Channel(std::vector<Matrix> kraus, double tol = kDefaultTol);

  static Channel identity(int dim);
  static Channel unitary(const Matrix& u, double tol = kDefaultTol);
  static Channel depolarizing(int dim);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  /// Heisenberg picture: B(H_out) → B(H_in), a ↦ Σ K† a K.
  Matrix heisenberg(const Matrix& a) const;

  /// Schrödinger picture: B(H_in) → B(H_out), ρ ↦ Σ K ρ K†.
  Matrix schrodinger(const Matrix& rho) const;
  State schrodinger(const State& rho) const;

  /// Extension 1_S ⊗ ψ acting on B(H_S ⊗ H_out) → B(H_S ⊗ H_in).
  Matrix heisenberg_on_second(const Matrix& a, int sys_dim) const;

 private:
  std::vector<Matrix> kraus_;
  int dim_in_;
  int dim_out_;
};

/// tr[ρ a]
Complex expect(const State& rho, const Matrix& a);

}  // namespace qrf
