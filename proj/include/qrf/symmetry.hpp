#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "qrf/operator_core.hpp"

namespace qrf {

/// Finite group given by an explicit Cayley table. Associativity, identity
/// and inverse laws are verified exhaustively at construction.
class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<std::vector<int>> mul);

  static std::shared_ptr<const FiniteGroup> trivial();
  static std::shared_ptr<const FiniteGroup> cyclic(int n);
  static std::shared_ptr<const FiniteGroup> symmetric(int n);

  int order() const { return order_; }
  int identity() const { return identity_; }
  int op(int a, int b) const;
  int inverse(int a) const;
  const std::vector<std::vector<int>>& table() const { return mul_; }

 private:
  int order_;
  int identity_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Unitary representation: one unitary per group element, verified to be a
/// strict homomorphism (U(g)U(h) = U(gh), U(e) = 1) within tolerance.
class UnitaryRep {
 public:
  UnitaryRep(GroupPtr group, std::vector<Matrix> matrices,
             double tol = kDefaultTol);

  /// Trivial representation (every element acts as identity).
  static UnitaryRep trivial(GroupPtr group, int dim);

  /// Right regular representation by permutation matrices on C^|G|.
  static UnitaryRep regular(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  int dim() const { return dim_; }
  const Matrix& matrix(int g) const;

  /// Left action on states: g.ρ = U(g) ρ U(g)†.
  State act_on_state(int g, const State& rho) const;

  /// Right action on operators: a.g = U(g)† a U(g).
  Matrix act_on_operator(const Matrix& a, int g) const;

 private:
  GroupPtr group_;
  int dim_;
  std::vector<Matrix> matrices_;
};

/// Injective homomorphism of a subgroup into a parent group.
class SubgroupInclusion {
 public:
  SubgroupInclusion(GroupPtr sub, GroupPtr parent, std::vector<int> embed);

  static SubgroupInclusion identity(GroupPtr g);

  const GroupPtr& sub() const { return sub_; }
  const GroupPtr& parent() const { return parent_; }
  int embed(int h) const;
  const std::vector<int>& embedding() const { return embed_; }

 private:
  GroupPtr sub_;
  GroupPtr parent_;
  std::vector<int> embed_;
};

/// Semidirect product T ⋊ L built from an action of L on T by automorphisms.
/// Product elements are indexed as t * |L| + l with multiplication
/// (t, l)(t', l') = (t · l(t'), l l').
class SemidirectProduct {
 public:
  SemidirectProduct(GroupPtr normal, GroupPtr acting,
                    std::vector<std::vector<int>> action);

  /// Dihedral group Z_n ⋊ Z_2, the toy spacetime-symmetry default.
  static SemidirectProduct dihedral(int n);

  const GroupPtr& normal() const { return normal_; }
  const GroupPtr& acting() const { return acting_; }
  const GroupPtr& product() const { return product_; }

  int element(int t, int l) const;

  /// g = (t, l) = (t, e).(0, l); returns (t, l).
  std::pair<int, int> factorize(int g) const;

  /// Embeddings of the factors into the product group.
  SubgroupInclusion embed_normal() const;
  SubgroupInclusion embed_acting() const;

 private:
  GroupPtr normal_;
  GroupPtr acting_;
  std::vector<std::vector<int>> action_;  // action_[l][t] = l(t)
  GroupPtr product_;
};

}  // namespace qrf
