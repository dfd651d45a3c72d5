#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qrf/measure.hpp"
#include "qrf/symmetry.hpp"

namespace qrf {

/// Discrete principal H-bundle: finite base and total space, projection,
/// and a free fiberwise right H-action making each fiber a single H-orbit.
class PrincipalBundle {
 public:
  PrincipalBundle(std::vector<std::string> base, std::vector<std::string> total,
                  GroupPtr group, std::vector<int> proj,
                  std::vector<std::vector<int>> action);

  /// Trivial bundle M × H with points labelled "p|h".
  static std::shared_ptr<const PrincipalBundle> trivial(
      std::vector<std::string> base, GroupPtr group);

  int base_size() const { return static_cast<int>(base_.size()); }
  int total_size() const { return static_cast<int>(total_.size()); }
  const GroupPtr& group() const { return group_; }
  const std::string& base_label(int p) const { return base_.at(p); }
  const std::string& total_label(int b) const { return total_.at(b); }
  int base_index(const std::string& label) const;
  int total_index(const std::string& label) const;
  int proj(int b) const { return proj_.at(b); }
  int act(int b, int g) const { return action_.at(b).at(g); }

  /// Points of the fiber over p, in total-space order.
  std::vector<int> fiber(int p) const;

 private:
  std::vector<std::string> base_;
  std::vector<std::string> total_;
  GroupPtr group_;
  std::vector<int> proj_;
  std::vector<std::vector<int>> action_;
};

using BundlePtr = std::shared_ptr<const PrincipalBundle>;

/// Local section over a subset U of the base.
class LocalSection {
 public:
  LocalSection(BundlePtr bundle, std::vector<int> domain,
               std::map<int, int> map);

  const BundlePtr& bundle() const { return bundle_; }
  const std::vector<int>& domain() const { return domain_; }
  bool covers(int p) const { return map_.count(p) > 0; }
  int at(int p) const;

 private:
  BundlePtr bundle_;
  std::vector<int> domain_;
  std::map<int, int> map_;
};

/// The unique h with b.h = σ(π(b)); the orientation of b against the section.
int orientation(const PrincipalBundle& bundle, const LocalSection& section,
                int b);

/// QRF on a principal bundle: a covariant POVM on π⁻¹(U) together with a
/// local section over U. The observable's sample space is the ordered list
/// of region points; effects are indexed accordingly.
class BundleFrame {
 public:
  BundleFrame(BundlePtr bundle, LocalSection section, Povm observable,
              std::optional<UnitaryRep> frame_rep, double tol = kDefaultTol);

  /// Ideal frame over the section's domain: basis projectors on C^|π⁻¹(U)|
  /// with the permutation representation of H.
  static BundleFrame ideal(BundlePtr bundle, LocalSection section);

  const BundlePtr& bundle() const { return bundle_; }
  const LocalSection& section() const { return section_; }
  const Povm& observable() const { return observable_; }
  const std::optional<UnitaryRep>& frame_rep() const { return frame_rep_; }
  const std::vector<int>& region() const { return region_; }
  int dim() const { return observable_.dim(); }

  /// Position of a total-space point in the region ordering.
  int region_index(int b) const;

  double covariance_violation() const;

 private:
  BundlePtr bundle_;
  LocalSection section_;
  Povm observable_;
  std::optional<UnitaryRep> frame_rep_;
  std::vector<int> region_;  // π⁻¹(U), ordered
};

/// Operator-valued function on the base together with the H-action on the
/// system it transforms under.
class QuantumField {
 public:
  QuantumField(std::map<int, Matrix> values, UnitaryRep sys_rep);

  const UnitaryRep& sys_rep() const { return sys_rep_; }
  int dim() const { return sys_rep_.dim(); }
  bool defined_at(int p) const { return values_.count(p) > 0; }
  const Matrix& value(int p) const;

 private:
  std::map<int, Matrix> values_;
  UnitaryRep sys_rep_;
};

/// ¥(φ̂) = Σ_{b∈π⁻¹(U)} φ̂(π(b)).w_σ(b) ⊗ E({b}), where w_σ(b) is the
/// fiber coordinate σ(π(b)).w_σ(b) = b (the inverse orientation).
Matrix relativize_field(const QuantumField& field, const BundleFrame& frame);

/// max_g ‖¥(φ̂).(g,g) − ¥(φ̂)‖ under the diagonal action; requires a frame
/// representation.
double field_invariance_violation(const QuantumField& field,
                                  const BundleFrame& frame);

/// ¥_ω(φ̂) = Σ_b φ̂(π(b)).w_σ(b) · μ^E_ω({b})
Matrix restrict_field(const QuantumField& field, const BundleFrame& frame,
                      const State& omega);

/// Embedding data of a sub-bundle: i on total spaces, j on bases, and the
/// subgroup inclusion. The commuting square π∘i = j∘π_R and H_R-equivariance
/// of i are verified at construction.
class BundleEmbedding {
 public:
  BundleEmbedding(BundlePtr sub, BundlePtr parent, SubgroupInclusion groups,
                  std::vector<int> total_map, std::vector<int> base_map);

  const BundlePtr& sub() const { return sub_; }
  const BundlePtr& parent() const { return parent_; }
  const SubgroupInclusion& groups() const { return groups_; }
  int total(int b) const { return total_map_.at(b); }
  int base(int p) const { return base_map_.at(p); }

 private:
  BundlePtr sub_;
  BundlePtr parent_;
  SubgroupInclusion groups_;
  std::vector<int> total_map_;
  std::vector<int> base_map_;
};

/// Transport a frame on the sub-bundle to the parent: push the observable
/// forward along i and transport the section along i∘γ_R∘j⁻¹.
BundleFrame reduce_bundle_frame(const BundleFrame& sub_frame,
                                const BundleEmbedding& emb);

/// Both sides of the sub-bundle reduction identity summed independently.
/// The field lives on the parent base and transforms under the parent group.
double bundle_reduction_residual(const QuantumField& field,
                                 const BundleFrame& sub_frame,
                                 const BundleEmbedding& emb);

struct AlgebraReport {
  std::vector<Matrix> observables;
  int span_dim = 0;
  int closure_dim = 0;  // span dimension after closing under products
};

/// Relational local observables {¥_ω(φ̂)} for a frame with trivial group,
/// with the linear span and its product closure.
AlgebraReport relational_local_algebra(const QuantumField& field,
                                       const BundleFrame& frame,
                                       const std::vector<State>& states,
                                       double tol = kDefaultTol);

/// Channel plus fiber-preserving bundle map relating two frames.
class FrameMorphism {
 public:
  /// theta maps region points of the source frame (total-space indices) to
  /// region points of the target.
  FrameMorphism(Channel psi, std::map<int, int> theta);

  const Channel& psi() const { return psi_; }
  int theta(int b) const;
  const std::map<int, int>& theta_map() const { return theta_; }

 private:
  Channel psi_;
  std::map<int, int> theta_;
};

/// Base map φ_θ = π∘θ∘π⁻¹ (any fiber representative; well-definedness is
/// verified). Keys are base points of U, values base points of U'.
std::map<int, int> base_map_of(const FrameMorphism& m, const BundleFrame& from,
                               const BundleFrame& to);

/// Verifies the frame-morphism invariants; throws PreconditionError on
/// violation.
void verify_frame_morphism(const FrameMorphism& m, const BundleFrame& from,
                           const BundleFrame& to, double tol = kDefaultTol);

/// ‖¥^{R'}(φ̂) − (1⊗ψ)(¥^R(φ̂∘φ_θ))‖ after verifying the morphism.
double frame_morphism_residual(const QuantumField& field,
                               const FrameMorphism& m, const BundleFrame& from,
                               const BundleFrame& to,
                               double tol = kDefaultTol);

/// Rank of the linear span of operators, treated as vectors, at tolerance.
int operator_span_dim(const std::vector<Matrix>& ops, double tol = kDefaultTol);

}  // namespace qrf
