#include "qrf/symmetry.hpp"

#include <algorithm>
#include <numeric>

namespace qrf {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> mul)
    : mul_(std::move(mul)) {
  order_ = static_cast<int>(mul_.size());
  if (order_ == 0) throw Error("FiniteGroup: empty table");
  for (const auto& row : mul_) {
    if (static_cast<int>(row.size()) != order_) {
      throw Error("FiniteGroup: table not square");
    }
    for (int v : row) {
      if (v < 0 || v >= order_) throw Error("FiniteGroup: entry out of range");
    }
  }
  // Locate the two-sided identity.
  identity_ = -1;
  for (int e = 0; e < order_; ++e) {
    bool ok = true;
    for (int a = 0; a < order_ && ok; ++a) {
      ok = mul_[e][a] == a && mul_[a][e] == a;
    }
    if (ok) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0) throw Error("FiniteGroup: no identity element");
  inv_.assign(order_, -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mul_[a][b] == identity_ && mul_[b][a] == identity_) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] < 0) throw Error("FiniteGroup: element without inverse");
  }
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      for (int c = 0; c < order_; ++c) {
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) {
          throw Error("FiniteGroup: associativity fails");
        }
      }
    }
  }
}

int FiniteGroup::op(int a, int b) const {
  if (a < 0 || a >= order_ || b < 0 || b >= order_) {
    throw Error("FiniteGroup::op: invalid element index");
  }
  return mul_[a][b];
}

int FiniteGroup::inverse(int a) const {
  if (a < 0 || a >= order_) {
    throw Error("FiniteGroup::inverse: invalid element index");
  }
  return inv_[a];
}

std::shared_ptr<const FiniteGroup> FiniteGroup::trivial() {
  return std::make_shared<FiniteGroup>(std::vector<std::vector<int>>{{0}});
}

std::shared_ptr<const FiniteGroup> FiniteGroup::cyclic(int n) {
  if (n <= 0) throw Error("FiniteGroup::cyclic: order must be positive");
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  }
  return std::make_shared<FiniteGroup>(std::move(mul));
}

namespace {

std::vector<std::vector<int>> permutations_of(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

}  // namespace

std::shared_ptr<const FiniteGroup> FiniteGroup::symmetric(int n) {
  if (n <= 0 || n > 6) throw Error("FiniteGroup::symmetric: n out of range");
  const auto perms = permutations_of(n);
  const int order = static_cast<int>(perms.size());
  auto index_of = [&](const std::vector<int>& q) {
    for (int i = 0; i < order; ++i) {
      if (perms[i] == q) return i;
    }
    throw Error("FiniteGroup::symmetric: internal lookup failure");
  };
  std::vector<std::vector<int>> mul(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      std::vector<int> composed(n);
      for (int i = 0; i < n; ++i) composed[i] = perms[a][perms[b][i]];
      mul[a][b] = index_of(composed);
    }
  }
  return std::make_shared<FiniteGroup>(std::move(mul));
}

UnitaryRep::UnitaryRep(GroupPtr group, std::vector<Matrix> matrices, double tol)
    : group_(std::move(group)), matrices_(std::move(matrices)) {
  if (!group_) throw Error("UnitaryRep: null group");
  const int n = group_->order();
  if (static_cast<int>(matrices_.size()) != n) {
    throw Error("UnitaryRep: need one matrix per group element");
  }
  dim_ = static_cast<int>(matrices_.front().rows());
  const Matrix id = Matrix::Identity(dim_, dim_);
  for (const Matrix& u : matrices_) {
    if (u.rows() != dim_ || u.cols() != dim_) {
      throw Error("UnitaryRep: matrices must share dimension");
    }
    if (max_abs_diff(u.adjoint() * u, id) > tol) {
      throw Error("UnitaryRep: matrix not unitary");
    }
  }
  if (max_abs_diff(matrices_[group_->identity()], id) > tol) {
    throw Error("UnitaryRep: U(e) != identity");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (max_abs_diff(matrices_[a] * matrices_[b],
                       matrices_[group_->op(a, b)]) > tol) {
        throw Error("UnitaryRep: homomorphism law fails");
      }
    }
  }
}

UnitaryRep UnitaryRep::trivial(GroupPtr group, int dim) {
  std::vector<Matrix> mats(group->order(), Matrix::Identity(dim, dim));
  return UnitaryRep(std::move(group), std::move(mats));
}

UnitaryRep UnitaryRep::regular(GroupPtr group) {
  const int n = group->order();
  std::vector<Matrix> mats;
  mats.reserve(n);
  for (int g = 0; g < n; ++g) {
    // Right regular representation e_x -> e_{x g^{-1}}; its basis projectors
    // are covariant for the right-translation action on the carrier.
    Matrix u = Matrix::Zero(n, n);
    const int ginv = group->inverse(g);
    for (int x = 0; x < n; ++x) u(group->op(x, ginv), x) = 1.0;
    mats.push_back(std::move(u));
  }
  return UnitaryRep(std::move(group), std::move(mats));
}

const Matrix& UnitaryRep::matrix(int g) const {
  if (g < 0 || g >= group_->order()) {
    throw Error("UnitaryRep::matrix: invalid element index");
  }
  return matrices_[g];
}

State UnitaryRep::act_on_state(int g, const State& rho) const {
  if (rho.dim() != dim_) throw Error("act_on_state: dimension mismatch");
  const Matrix& u = matrix(g);
  return State::unchecked(u * rho.op() * u.adjoint());
}

Matrix UnitaryRep::act_on_operator(const Matrix& a, int g) const {
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw Error("act_on_operator: dimension mismatch");
  }
  const Matrix& u = matrix(g);
  return u.adjoint() * a * u;
}

SubgroupInclusion::SubgroupInclusion(GroupPtr sub, GroupPtr parent,
                                     std::vector<int> embed)
    : sub_(std::move(sub)), parent_(std::move(parent)), embed_(std::move(embed)) {
  if (!sub_ || !parent_) throw Error("SubgroupInclusion: null group");
  const int n = sub_->order();
  if (static_cast<int>(embed_.size()) != n) {
    throw Error("SubgroupInclusion: embed must cover the subgroup");
  }
  for (int v : embed_) {
    if (v < 0 || v >= parent_->order()) {
      throw Error("SubgroupInclusion: image out of range");
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (embed_[a] == embed_[b]) throw Error("SubgroupInclusion: not injective");
    }
  }
  if (embed_[sub_->identity()] != parent_->identity()) {
    throw Error("SubgroupInclusion: identity not preserved");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (parent_->op(embed_[a], embed_[b]) != embed_[sub_->op(a, b)]) {
        throw Error("SubgroupInclusion: not a homomorphism");
      }
    }
  }
}

SubgroupInclusion SubgroupInclusion::identity(GroupPtr g) {
  std::vector<int> embed(g->order());
  std::iota(embed.begin(), embed.end(), 0);
  return SubgroupInclusion(g, g, std::move(embed));
}

int SubgroupInclusion::embed(int h) const {
  if (h < 0 || h >= sub_->order()) {
    throw Error("SubgroupInclusion::embed: invalid element index");
  }
  return embed_[h];
}

SemidirectProduct::SemidirectProduct(GroupPtr normal, GroupPtr acting,
                                     std::vector<std::vector<int>> action)
    : normal_(std::move(normal)),
      acting_(std::move(acting)),
      action_(std::move(action)) {
  if (!normal_ || !acting_) throw Error("SemidirectProduct: null group");
  const int nt = normal_->order();
  const int nl = acting_->order();
  if (static_cast<int>(action_.size()) != nl) {
    throw Error("SemidirectProduct: action needs one row per acting element");
  }
  for (const auto& row : action_) {
    if (static_cast<int>(row.size()) != nt) {
      throw Error("SemidirectProduct: action row has wrong length");
    }
    std::vector<bool> seen(nt, false);
    for (int v : row) {
      if (v < 0 || v >= nt || seen[v]) {
        throw Error("SemidirectProduct: action row is not a bijection");
      }
      seen[v] = true;
    }
  }
  // Each l must act as an automorphism of T, and l -> action_[l] must be a
  // homomorphism into Aut(T).
  for (int l = 0; l < nl; ++l) {
    for (int a = 0; a < nt; ++a) {
      for (int b = 0; b < nt; ++b) {
        if (action_[l][normal_->op(a, b)] !=
            normal_->op(action_[l][a], action_[l][b])) {
          throw Error("SemidirectProduct: action is not by automorphisms");
        }
      }
    }
  }
  for (int l = 0; l < nl; ++l) {
    for (int m = 0; m < nl; ++m) {
      const int lm = acting_->op(l, m);
      for (int t = 0; t < nt; ++t) {
        if (action_[l][action_[m][t]] != action_[lm][t]) {
          throw Error("SemidirectProduct: action homomorphism fails");
        }
      }
    }
  }
  for (int t = 0; t < nt; ++t) {
    if (action_[acting_->identity()][t] != t) {
      throw Error("SemidirectProduct: identity must act trivially");
    }
  }
  const int order = nt * nl;
  std::vector<std::vector<int>> mul(order, std::vector<int>(order));
  for (int t = 0; t < nt; ++t) {
    for (int l = 0; l < nl; ++l) {
      for (int t2 = 0; t2 < nt; ++t2) {
        for (int l2 = 0; l2 < nl; ++l2) {
          const int tt = normal_->op(t, action_[l][t2]);
          const int ll = acting_->op(l, l2);
          mul[t * nl + l][t2 * nl + l2] = tt * nl + ll;
        }
      }
    }
  }
  product_ = std::make_shared<FiniteGroup>(std::move(mul));
}

SemidirectProduct SemidirectProduct::dihedral(int n) {
  auto zn = FiniteGroup::cyclic(n);
  auto z2 = FiniteGroup::cyclic(2);
  std::vector<std::vector<int>> action(2, std::vector<int>(n));
  for (int t = 0; t < n; ++t) {
    action[0][t] = t;
    action[1][t] = (n - t) % n;  // reflection inverts rotations
  }
  return SemidirectProduct(std::move(zn), std::move(z2), std::move(action));
}

int SemidirectProduct::element(int t, int l) const {
  if (t < 0 || t >= normal_->order() || l < 0 || l >= acting_->order()) {
    throw Error("SemidirectProduct::element: index out of range");
  }
  return t * acting_->order() + l;
}

std::pair<int, int> SemidirectProduct::factorize(int g) const {
  if (g < 0 || g >= product_->order()) {
    throw Error("SemidirectProduct::factorize: index out of range");
  }
  return {g / acting_->order(), g % acting_->order()};
}

SubgroupInclusion SemidirectProduct::embed_normal() const {
  std::vector<int> embed(normal_->order());
  for (int t = 0; t < normal_->order(); ++t) {
    embed[t] = element(t, acting_->identity());
  }
  return SubgroupInclusion(normal_, product_, std::move(embed));
}

SubgroupInclusion SemidirectProduct::embed_acting() const {
  std::vector<int> embed(acting_->order());
  for (int l = 0; l < acting_->order(); ++l) {
    embed[l] = element(normal_->identity(), l);
  }
  return SubgroupInclusion(acting_, product_, std::move(embed));
}

}  // namespace qrf
