#pragma once

#include <vector>

#include "qrf/ov_integral.hpp"
#include "qrf/symmetry.hpp"

namespace qrf {

/// Linear difference operator on scalar functions over a finite grid.
class DifferenceOperator {
 public:
  DifferenceOperator(SampleSpace grid, Matrix matrix);

  /// Periodic forward difference f(p) ↦ f(p+1) − f(p) on an n-point cycle.
  static DifferenceOperator forward_difference(int n);

  const SampleSpace& grid() const { return grid_; }
  const Matrix& matrix() const { return matrix_; }

  /// Apply to a scalar function given as a vector over the grid.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const;

 private:
  SampleSpace grid_;
  Matrix matrix_;
};

/// Entrywise lift: result(p) = Σ_q T[p,q]·field(q).
OperatorField lift_apply(const DifferenceOperator& t,
                         const OperatorField& field);

/// max over grid points and matrix-unit functionals of the difference
/// between the entrywise lift and the duality definition
/// tr[ρ T̂(φ̂)(p)] = T(φ̂_ρ)(p).
double lift_duality_residual(const DifferenceOperator& t,
                             const OperatorField& field);

struct KernelReport {
  bool member = false;
  double residual = 0.0;  // max_p ‖T̂(φ̂)(p)‖
};

KernelReport kernel_membership(const DifferenceOperator& t,
                               const OperatorField& field,
                               double tol = kDefaultTol);

/// Linear action of a group on scalar functions over the grid, one matrix
/// per group element.
class ScalarAction {
 public:
  ScalarAction(GroupPtr group, std::vector<Matrix> matrices,
               double tol = kDefaultTol);

  /// Pull-back along a point permutation action: (f.g)(p) = f(p.g⁻¹)
  /// for action[g][p] = p.g.
  static ScalarAction from_point_action(
      GroupPtr group, const std::vector<std::vector<int>>& point_action);

  const GroupPtr& group() const { return group_; }
  const Matrix& matrix(int g) const { return matrices_.at(g); }
  int grid_size() const { return static_cast<int>(matrices_.front().rows()); }

  /// max_g ‖T S(g) P_ker‖: how badly the action fails to preserve ker(T).
  double kernel_preservation_violation(const DifferenceOperator& t,
                                       double tol = kDefaultTol) const;

 private:
  GroupPtr group_;
  std::vector<Matrix> matrices_;
};

/// Transformed field (φ̂.g)(p) = Σ_q S(g)[p,q]·φ̂(q), defined through the
/// duality with scalar functions. Throws PreconditionError when the scalar
/// action fails to preserve ker(T), and Error when the input field is not
/// in the lifted kernel.
OperatorField symmetry_action_on_solutions(const DifferenceOperator& t,
                                           const ScalarAction& action,
                                           const OperatorField& field, int g,
                                           double tol = kDefaultTol);

}  // namespace qrf
