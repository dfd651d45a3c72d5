#include "qrf/pde_lift.hpp"

#include <Eigen/SVD>

namespace qrf {

DifferenceOperator::DifferenceOperator(SampleSpace grid, Matrix matrix)
    : grid_(std::move(grid)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != grid_.size() || matrix_.cols() != grid_.size()) {
    throw Error("DifferenceOperator: matrix must be square over the grid");
  }
  if (!all_finite(matrix_)) {
    throw Error("DifferenceOperator: entries must be finite");
  }
}

DifferenceOperator DifferenceOperator::forward_difference(int n) {
  Matrix m = Matrix::Zero(n, n);
  // Accumulate so the n = 1 cycle correctly degenerates to the zero operator.
  for (int p = 0; p < n; ++p) {
    m(p, (p + 1) % n) += 1.0;
    m(p, p) -= 1.0;
  }
  return DifferenceOperator(SampleSpace::indexed(n), std::move(m));
}

Eigen::VectorXcd DifferenceOperator::apply(const Eigen::VectorXcd& f) const {
  if (f.size() != grid_.size()) {
    throw Error("DifferenceOperator::apply: length mismatch");
  }
  return matrix_ * f;
}

OperatorField lift_apply(const DifferenceOperator& t,
                         const OperatorField& field) {
  if (!(field.space() == t.grid())) {
    throw Error("lift_apply: field space must equal the grid");
  }
  const int n = t.grid().size();
  std::vector<Matrix> values(n, Matrix::Zero(field.dim(), field.dim()));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const Complex c = t.matrix()(p, q);
      if (c != Complex(0.0)) values[p] += c * field.value(q);
    }
  }
  return OperatorField(t.grid(), std::move(values));
}

double lift_duality_residual(const DifferenceOperator& t,
                             const OperatorField& field) {
  const OperatorField lifted = lift_apply(t, field);
  const int d = field.dim();
  const int n = t.grid().size();
  double worst = 0.0;
  // Matrix-unit functionals a ↦ tr[|j><i| a] = a(i,j) span the dual space;
  // compare the lift against the scalar-level computation for each.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Eigen::VectorXcd scalar(n);
      for (int q = 0; q < n; ++q) scalar(q) = field.value(q)(i, j);
      const Eigen::VectorXcd transformed = t.apply(scalar);
      for (int p = 0; p < n; ++p) {
        worst = std::max(worst, std::abs(lifted.value(p)(i, j) - transformed(p)));
      }
    }
  }
  return worst;
}

KernelReport kernel_membership(const DifferenceOperator& t,
                               const OperatorField& field, double tol) {
  const OperatorField lifted = lift_apply(t, field);
  KernelReport report;
  for (int p = 0; p < t.grid().size(); ++p) {
    report.residual = std::max(report.residual, spectral_norm(lifted.value(p)));
  }
  report.member = report.residual <= tol;
  return report;
}

ScalarAction::ScalarAction(GroupPtr group, std::vector<Matrix> matrices,
                           double tol)
    : group_(std::move(group)), matrices_(std::move(matrices)) {
  if (!group_) throw Error("ScalarAction: null group");
  if (matrices_.size() != static_cast<size_t>(group_->order())) {
    throw Error("ScalarAction: need one matrix per group element");
  }
  const int n = static_cast<int>(matrices_.front().rows());
  for (const Matrix& m : matrices_) {
    if (m.rows() != n || m.cols() != n) {
      throw Error("ScalarAction: matrices must share dimension");
    }
  }
  if (max_abs_diff(matrices_[group_->identity()], Matrix::Identity(n, n)) >
      tol) {
    throw Error("ScalarAction: identity must act trivially");
  }
  for (int a = 0; a < group_->order(); ++a) {
    for (int b = 0; b < group_->order(); ++b) {
      if (max_abs_diff(matrices_[a] * matrices_[b],
                       matrices_[group_->op(a, b)]) > tol) {
        throw Error("ScalarAction: homomorphism law fails");
      }
    }
  }
}

ScalarAction ScalarAction::from_point_action(
    GroupPtr group, const std::vector<std::vector<int>>& point_action) {
  if (point_action.size() != static_cast<size_t>(group->order())) {
    throw Error("ScalarAction: need one permutation per group element");
  }
  const int n = static_cast<int>(point_action.front().size());
  std::vector<Matrix> mats;
  mats.reserve(group->order());
  for (int g = 0; g < group->order(); ++g) {
    const int ginv = group->inverse(g);
    Matrix m = Matrix::Zero(n, n);
    for (int p = 0; p < n; ++p) m(p, point_action[ginv][p]) = 1.0;
    mats.push_back(std::move(m));
  }
  return ScalarAction(std::move(group), std::move(mats));
}

double ScalarAction::kernel_preservation_violation(const DifferenceOperator& t,
                                                   double tol) const {
  if (t.grid().size() != grid_size()) {
    throw Error("ScalarAction: grid size mismatch");
  }
  // Kernel projector from the SVD of T.
  Eigen::JacobiSVD<Matrix> svd(t.matrix(), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int n = grid_size();
  Matrix kernel_proj = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double s = i < sv.size() ? sv(i) : 0.0;
    if (s <= std::max(tol, 1e-12 * (sv.size() ? sv(0) : 0.0))) {
      const Eigen::VectorXcd v = svd.matrixV().col(i);
      kernel_proj += v * v.adjoint();
    }
  }
  double worst = 0.0;
  for (int g = 0; g < group_->order(); ++g) {
    worst = std::max(worst,
                     spectral_norm(t.matrix() * matrices_[g] * kernel_proj));
  }
  return worst;
}

OperatorField symmetry_action_on_solutions(const DifferenceOperator& t,
                                           const ScalarAction& action,
                                           const OperatorField& field, int g,
                                           double tol) {
  const double scalar_violation = action.kernel_preservation_violation(t, tol);
  if (scalar_violation > tol) {
    throw PreconditionError(
        "symmetry_action_on_solutions: scalar action does not preserve "
        "ker(T), violation " +
        std::to_string(scalar_violation));
  }
  if (!kernel_membership(t, field, tol).member) {
    throw Error("symmetry_action_on_solutions: field is not in the kernel");
  }
  const int n = field.space().size();
  const Matrix& s = action.matrix(g);
  std::vector<Matrix> values(n, Matrix::Zero(field.dim(), field.dim()));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const Complex c = s(p, q);
      if (c != Complex(0.0)) values[p] += c * field.value(q);
    }
  }
  OperatorField out(field.space(), std::move(values));
  const KernelReport after = kernel_membership(t, out, tol);
  if (!after.member) {
    throw Error(
        "symmetry_action_on_solutions: transformed field left the kernel, "
        "residual " +
        std::to_string(after.residual));
  }
  return out;
}

}  // namespace qrf
