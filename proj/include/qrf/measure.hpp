#pragma once

#include <string>
#include <vector>

#include "qrf/operator_core.hpp"
#include "qrf/symmetry.hpp"

namespace qrf {

/// Finite ordered sample space with unique labels. The sigma-algebra is
/// always the full power set, so measures and POVMs are fixed by their
/// values on singletons.
class SampleSpace {
 public:
  explicit SampleSpace(std::vector<std::string> points);

  /// Labels "0".."n-1".
  static SampleSpace indexed(int n);

  int size() const { return static_cast<int>(points_.size()); }
  const std::string& label(int i) const { return points_.at(i); }
  const std::vector<std::string>& labels() const { return points_; }
  int index_of(const std::string& label) const;

  bool operator==(const SampleSpace& other) const {
    return points_ == other.points_;
  }

 private:
  std::vector<std::string> points_;
};

/// Normalized POVM on a finite sample space, stored by atomic effects.
class Povm {
 public:
  Povm(SampleSpace space, std::vector<Matrix> effects,
       double tol = kDefaultTol);

  /// Diagonal basis projectors on C^|space|; the finite model of
  /// multiplication by characteristic functions on L2.
  static Povm ideal(SampleSpace space);

  const SampleSpace& space() const { return space_; }
  int dim() const { return dim_; }
  const Matrix& effect(int x) const { return effects_.at(x); }
  const std::vector<Matrix>& effects() const { return effects_; }

  /// Effect of an arbitrary subset, E(X) = sum over the singletons.
  Matrix effect_of(const std::vector<int>& subset) const;

  bool is_sharp(double tol = kDefaultTol) const;

 private:
  SampleSpace space_;
  std::vector<Matrix> effects_;
  int dim_;
};

/// Born probability vector μ^E_ω over the sample space points.
Eigen::VectorXd born_measure(const Povm& povm, const State& omega,
                             double tol = kDefaultTol);

/// Push-forward along a total map f: Σ → Σ'; effects'(y) = Σ_{f(x)=y} E(x).
Povm push_forward(const Povm& povm, const std::vector<int>& f,
                  SampleSpace target);

/// Heisenberg-picture composition ψ ∘ E; effects'(x) = ψ(E(x)).
Povm compose_with_channel(const Channel& psi, const Povm& povm);

/// POVM covariant under a group action on the sample space:
/// E({x}).g = E({x.g}).
class CovariantPovm {
 public:
  /// space_action[g][x] = x.g; must permute points for each g and define a
  /// right action.
  CovariantPovm(Povm povm, UnitaryRep rep,
                std::vector<std::vector<int>> space_action);

  const Povm& povm() const { return povm_; }
  const UnitaryRep& rep() const { return rep_; }
  int act_on_point(int x, int g) const { return space_action_.at(g).at(x); }
  const std::vector<std::vector<int>>& space_action() const {
    return space_action_;
  }

  /// max over (g, point) of ‖E({x}).g − E({x.g})‖ in spectral norm.
  double covariance_violation() const;

 private:
  Povm povm_;
  UnitaryRep rep_;
  std::vector<std::vector<int>> space_action_;
};

}  // namespace qrf
