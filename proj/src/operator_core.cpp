#include "qrf/operator_core.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qrf {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& m) {
  return max_abs_diff(m, m.adjoint());
}

namespace {

// Gershgorin lower/upper bounds for the eigenvalues of a Hermitian matrix.
std::pair<double, double> gershgorin_bounds(const Matrix& m) {
  double lo = 0.0, hi = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double radius = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) radius += std::abs(m(i, j));
    }
    const double center = m(i, i).real();
    lo = (i == 0) ? center - radius : std::min(lo, center - radius);
    hi = (i == 0) ? center + radius : std::max(hi, center + radius);
  }
  return {lo, hi};
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

double min_eigenvalue(const Matrix& m) {
  if (m.rows() > 64) {
    // Gershgorin lower bound certifies nonnegativity without an eigensolve.
    auto [lo, hi] = gershgorin_bounds(m);
    if (lo >= 0.0) return lo;
  }
  return hermitian_eigenvalues(m).minCoeff();
}

double max_eigenvalue(const Matrix& m) {
  return hermitian_eigenvalues(m).maxCoeff();
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  if (ra * rb > kMaxProductDim || ca * cb > kMaxProductDim) {
    throw Error("tensor: product dimension exceeds cap of " +
                std::to_string(kMaxProductDim));
  }
  Matrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& a, int which, std::pair<int, int> dims) {
  const int d0 = dims.first, d1 = dims.second;
  if (d0 <= 0 || d1 <= 0 || a.rows() != d0 * d1 || a.cols() != d0 * d1) {
    throw Error("partial_trace: inconsistent dimensions");
  }
  if (which != 0 && which != 1) {
    throw Error("partial_trace: subsystem index must be 0 or 1");
  }
  if (which == 1) {
    Matrix out = Matrix::Zero(d0, d0);
    for (int i = 0; i < d0; ++i) {
      for (int j = 0; j < d0; ++j) {
        for (int k = 0; k < d1; ++k) {
          out(i, j) += a(i * d1 + k, j * d1 + k);
        }
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(d1, d1);
  for (int k = 0; k < d1; ++k) {
    for (int l = 0; l < d1; ++l) {
      for (int i = 0; i < d0; ++i) {
        out(k, l) += a(i * d1 + k, i * d1 + l);
      }
    }
  }
  return out;
}

State::State(Matrix op, double tol) : op_(std::move(op)) {
  if (op_.rows() != op_.cols() || op_.rows() == 0) {
    throw Error("State: operator must be square and nonempty");
  }
  if (!all_finite(op_)) throw Error("State: entries must be finite");
  if (hermiticity_defect(op_) > tol) throw Error("State: not Hermitian");
  if (std::abs(op_.trace() - Complex(1.0)) > tol) {
    throw Error("State: trace must be 1");
  }
  if (min_eigenvalue(op_) < -tol) throw Error("State: not positive semidefinite");
}

State State::unchecked(Matrix op) { return State(std::move(op), UncheckedTag{}); }

Effect::Effect(Matrix op, double tol) : op_(std::move(op)) {
  if (op_.rows() != op_.cols() || op_.rows() == 0) {
    throw Error("Effect: operator must be square and nonempty");
  }
  if (!all_finite(op_)) throw Error("Effect: entries must be finite");
  if (hermiticity_defect(op_) > tol) throw Error("Effect: not Hermitian");
  if (min_eigenvalue(op_) < -tol) throw Error("Effect: spectrum below 0");
  if (max_eigenvalue(op_) > 1.0 + tol) throw Error("Effect: spectrum above 1");
}

Effect Effect::unchecked(Matrix op) {
  return Effect(std::move(op), UncheckedTag{});
}

Channel::Channel(std::vector<Matrix> kraus, double tol)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error("Channel: needs at least one Kraus operator");
  dim_out_ = static_cast<int>(kraus_.front().rows());
  dim_in_ = static_cast<int>(kraus_.front().cols());
  Matrix sum = Matrix::Zero(dim_in_, dim_in_);
  for (const Matrix& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw Error("Channel: Kraus operators must share shape");
    }
    if (!all_finite(k)) throw Error("Channel: Kraus entries must be finite");
    sum += k.adjoint() * k;
  }
  if (max_abs_diff(sum, Matrix::Identity(dim_in_, dim_in_)) > tol) {
    throw Error("Channel: completeness sum K†K != identity");
  }
}

Channel Channel::identity(int dim) {
  return Channel({Matrix::Identity(dim, dim)});
}

Channel Channel::unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) throw Error("Channel::unitary: matrix not square");
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  if (max_abs_diff(u.adjoint() * u, id) > tol) {
    throw Error("Channel::unitary: matrix not unitary");
  }
  return Channel({u});
}

Channel Channel::depolarizing(int dim) {
  // Kraus set {|i><j| / sqrt(dim)}: sends every state to the maximally mixed
  // one and every operator to tr[a]/dim * identity in the Heisenberg picture.
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<size_t>(dim) * dim);
  const double w = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Matrix k = Matrix::Zero(dim, dim);
      k(i, j) = w;
      kraus.push_back(std::move(k));
    }
  }
  return Channel(std::move(kraus));
}

Matrix Channel::heisenberg(const Matrix& a) const {
  if (a.rows() != dim_out_ || a.cols() != dim_out_) {
    throw Error("Channel::heisenberg: dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim_in_, dim_in_);
  for (const Matrix& k : kraus_) out += k.adjoint() * a * k;
  return out;
}

Matrix Channel::schrodinger(const Matrix& rho) const {
  if (rho.rows() != dim_in_ || rho.cols() != dim_in_) {
    throw Error("Channel::schrodinger: dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const Matrix& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

State Channel::schrodinger(const State& rho) const {
  return State::unchecked(schrodinger(rho.op()));
}

Matrix Channel::heisenberg_on_second(const Matrix& a, int sys_dim) const {
  if (a.rows() != static_cast<Eigen::Index>(sys_dim) * dim_out_ ||
      a.cols() != a.rows()) {
    throw Error("Channel::heisenberg_on_second: dimension mismatch");
  }
  const Matrix id = Matrix::Identity(sys_dim, sys_dim);
  Matrix out =
      Matrix::Zero(static_cast<Eigen::Index>(sys_dim) * dim_in_, sys_dim * dim_in_);
  for (const Matrix& k : kraus_) {
    const Matrix ext = tensor(id, k);
    out += ext.adjoint() * a * ext;
  }
  return out;
}

Complex expect(const State& rho, const Matrix& a) {
  if (rho.dim() != a.rows() || a.rows() != a.cols()) {
    throw Error("expect: dimension mismatch");
  }
  return (rho.op() * a).trace();
}

}  // namespace qrf
