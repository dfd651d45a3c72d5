#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qrf/bundle_qrf.hpp"
#include "qrf/pde_lift.hpp"

namespace qrf {

/// Finite stand-in for the frame bundle: a principal G_L-bundle together
/// with a little-group inclusion H < G_L and a reference trivialization.
/// Left cosets of H play the role of the pointwise choices of metric.
class FrameBundleModel {
 public:
  FrameBundleModel(BundlePtr bundle, SubgroupInclusion little,
                   LocalSection reference);

  const BundlePtr& bundle() const { return bundle_; }
  const SubgroupInclusion& little() const { return little_; }
  const LocalSection& reference() const { return reference_; }

  int num_sectors() const { return num_sectors_; }

  /// Coset index of a big-group element.
  int coset_of(int g) const { return coset_of_.at(g); }

  /// Fiber coordinate w(b) with reference(π(b)).w(b) = b.
  int fiber_coordinate(int b) const;

  /// Metric sector of a total-space point.
  int sector_of(int b) const { return coset_of(fiber_coordinate(b)); }

  /// Partition of the fiber over p into sectors; sectors[s] lists points.
  std::vector<std::vector<int>> stratify(int p) const;

 private:
  BundlePtr bundle_;
  SubgroupInclusion little_;
  LocalSection reference_;
  std::vector<int> coset_of_;
  int num_sectors_;
};

struct MetricAssignment {
  std::map<int, int> sector_per_point;  // base point -> coset index
  std::vector<int> subbundle_points;    // total points in the assigned sectors
};

/// The metric determined by a section: per-point sector of the section's
/// fiber coordinate plus the induced H-sub-bundle over the section domain.
MetricAssignment metric_from_section(const FrameBundleModel& model,
                                     const LocalSection& section);

struct GeometryDistribution {
  /// assignments[i] is a sector per section-domain point, ordered as
  /// FrameBundleModel-section domain (sorted).
  std::vector<std::vector<int>> assignments;
  Eigen::VectorXd probabilities;
};

/// prob(g, ω): Born mass of each global sector assignment over the frame's
/// region. Probabilities over the full partition sum to 1.
GeometryDistribution indefinite_geometry_probabilities(
    const FrameBundleModel& model, const BundleFrame& frame,
    const State& omega);

/// Residual of the reduced-vs-full computation when the frame state is
/// supported on the sub-bundle of the section's metric. Throws
/// PreconditionError if the off-sub-bundle mass exceeds tolerance.
double reduced_vs_full_residual(const FrameBundleModel& model,
                                const BundleFrame& frame,
                                const QuantumField& field, const State& omega,
                                double tol = kDefaultTol);

enum class PathVariant {
  kOnSection,
  kLifted,
  kIndefiniteOrientation,
  kStationarySubgroup,
};

/// Path-restricted frame: a finite index set standing in for the real line,
/// a path on the base, an optional lift, and a POVM on the index set (or on
/// index × little group for the indefinite-orientation variants).
struct PathFrame {
  std::vector<int> path;            // step -> base point
  std::optional<std::vector<int>> lift;  // step -> total point
  Povm povm;
};

/// Σ_t φ̂(γ(t))·μ(t) and its three orientation-carrying variants. The
/// stationary variant restricts the orientation sum to a designated
/// subgroup of the little group.
Matrix path_restricted_observable(
    const PathFrame& pf, const FrameBundleModel& model,
    const LocalSection& section, const QuantumField& field, const State& omega,
    PathVariant variant,
    const std::optional<SubgroupInclusion>& stationary = std::nullopt);

struct IsometryReport {
  bool isometry = false;
  double residual = 0.0;
};

/// Classifies the base map of a frame morphism as sector-preserving
/// ("isometry") or general, then reports the transformation-identity
/// residual.
IsometryReport isometric_frame_transform(const FrameMorphism& m,
                                         const FrameBundleModel& model,
                                         const BundleFrame& from,
                                         const BundleFrame& to,
                                         const QuantumField& field,
                                         double tol = kDefaultTol);

/// Relativization with the metric-coupled field-equation indicator: points
/// whose sector's equation the field fails to solve drop out of the sum.
/// sector_equations maps coset index -> difference operator on the frame's
/// section domain (ordered as the section domain).
Matrix gr_coupled_relativize(
    const FrameBundleModel& model, const BundleFrame& frame,
    const QuantumField& field,
    const std::map<int, DifferenceOperator>& sector_equations,
    double tol = kDefaultTol);

}  // namespace qrf
