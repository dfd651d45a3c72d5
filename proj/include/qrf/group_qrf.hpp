#pragma once

#include <optional>
#include <vector>

#include "qrf/measure.hpp"
#include "qrf/ov_integral.hpp"
#include "qrf/symmetry.hpp"

namespace qrf {

/// Quantum reference frame on a finite group: a POVM over the group's
/// underlying set, covariant for the right-translation action whenever the
/// frame carries a representation. Frames obtained by reduction from a
/// proper subgroup carry no full-group representation and skip the
/// covariance check.
class GroupFrame {
 public:
  GroupFrame(GroupPtr group, Povm observable,
             std::optional<UnitaryRep> frame_rep, double tol = kDefaultTol);

  /// Sharp frame from the regular representation: basis projectors indexed
  /// by group elements, covariant by construction.
  static GroupFrame regular(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  const Povm& observable() const { return observable_; }
  const std::optional<UnitaryRep>& frame_rep() const { return frame_rep_; }
  int dim() const { return observable_.dim(); }

  /// The frame observable with its right-translation covariance structure.
  /// Requires a frame representation.
  CovariantPovm covariant_observable() const;

  double covariance_violation() const;

 private:
  GroupPtr group_;
  Povm observable_;
  std::optional<UnitaryRep> frame_rep_;
};

/// ρ^(ω) = Σ_g μ^E_ω(g) · g.ρ
State relative_state(const State& rho, const State& omega,
                     const GroupFrame& frame, const UnitaryRep& sys);

/// Relative state against an explicit classical distribution μ on the group
/// carrier, ρ^(μ) = Σ_g μ(g) · g.ρ.
State relative_state_classical(const State& rho, const Eigen::VectorXd& mu,
                               const UnitaryRep& sys);

/// ¥(a) = Σ_g (a.g) ⊗ E({g}) on system ⊗ frame.
Matrix relativize(const Matrix& a, const GroupFrame& frame,
                  const UnitaryRep& sys);

/// |tr[ρ^(ω) a] − tr[(ρ⊗ω) ¥(a)]|
double duality_residual(const State& rho, const State& omega, const Matrix& a,
                        const GroupFrame& frame, const UnitaryRep& sys);

/// max_h ‖¥(a).(h,h) − ¥(a)‖ under the diagonal right action. Requires a
/// frame representation.
double invariance_violation(const Matrix& a, const GroupFrame& frame,
                            const UnitaryRep& sys);

/// Γ_ω ∘ ¥: ¥_ω(a) = Σ_g μ^E_ω(g) · (a.g) on the system alone.
Matrix restrict_observable(const Matrix& a, const State& omega,
                           const GroupFrame& frame, const UnitaryRep& sys);

/// Error curve ‖¥_{ω_t}(a) − a‖ over a family of frame states.
std::vector<double> localizability_probe(const Matrix& a,
                                         const GroupFrame& frame,
                                         const UnitaryRep& sys,
                                         const std::vector<State>& family);

/// Push a frame on a subgroup G_R forward along an inclusion into G. The
/// result has effects supported on the image and no full-group
/// representation.
GroupFrame reduce_frame(const GroupFrame& sub_frame,
                        const SubgroupInclusion& inc);

/// ‖Σ_{g∈G}(a.g)⊗E({g}) − Σ_{h∈G_R}(a.h)⊗F({h})‖: both sides of the
/// reduction identity summed independently.
double reduction_residual(const Matrix& a, const GroupFrame& sub_frame,
                          const SubgroupInclusion& inc, const UnitaryRep& sys);

/// External frame transformation residual ‖¥^{R'}(a) − (1⊗ψ)(¥^R(a))‖.
/// Preconditions E_{R'} = ψ∘E_R and equivariance of ψ are verified first
/// and raise PreconditionError when violated.
double external_frame_transform_residual(const Matrix& a,
                                         const GroupFrame& frame_r,
                                         const GroupFrame& frame_r2,
                                         const Channel& psi,
                                         const UnitaryRep& sys,
                                         double tol = kDefaultTol);

/// ψ(b.g) vs ψ(b).g on the matrix-unit basis; the equivariance certificate
/// used by external_frame_transform_residual.
double equivariance_violation(const Channel& psi, const UnitaryRep& rep_out,
                              const UnitaryRep& rep_in);

/// Relational local observable ¥_ω(A) = Σ_{x: μ(x) > tol} Â(x)·μ(x) for a
/// frame reduced to the translation part of a factorized group.
Matrix relational_local_observable(const OperatorField& field,
                                   const GroupFrame& translation_frame,
                                   const State& omega,
                                   double tol = kDefaultTol);

/// Gauge-extended variant: frame on T × H with a product sample space
/// (indexed x·|H| + h), field values rotated by the gauge representation.
Matrix relational_local_observable_gauged(const OperatorField& field,
                                          const UnitaryRep& gauge_rep,
                                          const Povm& product_observable,
                                          const State& omega,
                                          double tol = kDefaultTol);

}  // namespace qrf
