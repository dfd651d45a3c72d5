#include "qrf/bundle_qrf.hpp"

#include <algorithm>
#include <set>

#include "qrf/group_qrf.hpp"

namespace qrf {

PrincipalBundle::PrincipalBundle(std::vector<std::string> base,
                                 std::vector<std::string> total, GroupPtr group,
                                 std::vector<int> proj,
                                 std::vector<std::vector<int>> action)
    : base_(std::move(base)),
      total_(std::move(total)),
      group_(std::move(group)),
      proj_(std::move(proj)),
      action_(std::move(action)) {
  if (!group_) throw Error("PrincipalBundle: null group");
  if (base_.empty() || total_.empty()) {
    throw Error("PrincipalBundle: base and total space must be nonempty");
  }
  {
    std::set<std::string> seen(base_.begin(), base_.end());
    if (seen.size() != base_.size()) {
      throw Error("PrincipalBundle: duplicate base label");
    }
  }
  {
    std::set<std::string> seen(total_.begin(), total_.end());
    if (seen.size() != total_.size()) {
      throw Error("PrincipalBundle: duplicate total-space label");
    }
  }
  const int nb = static_cast<int>(total_.size());
  const int nh = group_->order();
  if (proj_.size() != total_.size()) {
    throw Error("PrincipalBundle: projection must be total");
  }
  for (int v : proj_) {
    if (v < 0 || v >= static_cast<int>(base_.size())) {
      throw Error("PrincipalBundle: projection image out of range");
    }
  }
  if (static_cast<int>(action_.size()) != nb) {
    throw Error("PrincipalBundle: action needs one row per total point");
  }
  for (int b = 0; b < nb; ++b) {
    if (static_cast<int>(action_[b].size()) != nh) {
      throw Error("PrincipalBundle: action row has wrong length");
    }
    for (int g = 0; g < nh; ++g) {
      const int bg = action_[b][g];
      if (bg < 0 || bg >= nb) {
        throw Error("PrincipalBundle: action image out of range");
      }
      if (proj_[bg] != proj_[b]) {
        throw Error("PrincipalBundle: action is not fiberwise");
      }
      // Freeness.
      if (bg == b && g != group_->identity()) {
        throw Error("PrincipalBundle: action has fixed points");
      }
    }
    if (action_[b][group_->identity()] != b) {
      throw Error("PrincipalBundle: identity must act trivially");
    }
    for (int g = 0; g < nh; ++g) {
      for (int h = 0; h < nh; ++h) {
        if (action_[action_[b][g]][h] != action_[b][group_->op(g, h)]) {
          throw Error("PrincipalBundle: right-action law fails");
        }
      }
    }
  }
  // Local triviality: each fiber is a single free orbit of size |H|.
  for (int p = 0; p < static_cast<int>(base_.size()); ++p) {
    const auto fib = fiber(p);
    if (static_cast<int>(fib.size()) != nh) {
      throw Error("PrincipalBundle: fiber over '" + base_[p] +
                  "' has wrong size");
    }
    std::set<int> orbit;
    for (int g = 0; g < nh; ++g) orbit.insert(action_[fib.front()][g]);
    if (static_cast<int>(orbit.size()) != nh) {
      throw Error("PrincipalBundle: fiber is not a single orbit");
    }
  }
}

std::shared_ptr<const PrincipalBundle> PrincipalBundle::trivial(
    std::vector<std::string> base, GroupPtr group) {
  const int nh = group->order();
  std::vector<std::string> total;
  std::vector<int> proj;
  std::vector<std::vector<int>> action;
  for (int p = 0; p < static_cast<int>(base.size()); ++p) {
    for (int h = 0; h < nh; ++h) {
      total.push_back(base[p] + "|" + std::to_string(h));
      proj.push_back(p);
      std::vector<int> row(nh);
      for (int g = 0; g < nh; ++g) row[g] = p * nh + group->op(h, g);
      action.push_back(std::move(row));
    }
  }
  return std::make_shared<PrincipalBundle>(std::move(base), std::move(total),
                                           std::move(group), std::move(proj),
                                           std::move(action));
}

int PrincipalBundle::base_index(const std::string& label) const {
  for (int p = 0; p < base_size(); ++p) {
    if (base_[p] == label) return p;
  }
  throw Error("PrincipalBundle: unknown base label '" + label + "'");
}

int PrincipalBundle::total_index(const std::string& label) const {
  for (int b = 0; b < total_size(); ++b) {
    if (total_[b] == label) return b;
  }
  throw Error("PrincipalBundle: unknown total label '" + label + "'");
}

std::vector<int> PrincipalBundle::fiber(int p) const {
  std::vector<int> out;
  for (int b = 0; b < total_size(); ++b) {
    if (proj_[b] == p) out.push_back(b);
  }
  return out;
}

LocalSection::LocalSection(BundlePtr bundle, std::vector<int> domain,
                           std::map<int, int> map)
    : bundle_(std::move(bundle)), domain_(std::move(domain)), map_(std::move(map)) {
  if (!bundle_) throw Error("LocalSection: null bundle");
  if (domain_.empty()) throw Error("LocalSection: empty domain");
  std::set<int> seen;
  for (int p : domain_) {
    if (p < 0 || p >= bundle_->base_size() || !seen.insert(p).second) {
      throw Error("LocalSection: bad domain point");
    }
    auto it = map_.find(p);
    if (it == map_.end()) throw Error("LocalSection: map not total on domain");
    if (bundle_->proj(it->second) != p) {
      throw Error("LocalSection: proj∘σ != id at base point " +
                  bundle_->base_label(p));
    }
  }
  if (map_.size() != domain_.size()) {
    throw Error("LocalSection: map defined outside the domain");
  }
}

int LocalSection::at(int p) const {
  auto it = map_.find(p);
  if (it == map_.end()) {
    throw Error("LocalSection: point outside section domain");
  }
  return it->second;
}

int orientation(const PrincipalBundle& bundle, const LocalSection& section,
                int b) {
  const int p = bundle.proj(b);
  if (!section.covers(p)) {
    throw Error("orientation: point lies outside the section's region");
  }
  const int target = section.at(p);
  for (int h = 0; h < bundle.group()->order(); ++h) {
    if (bundle.act(b, h) == target) return h;  // unique by freeness
  }
  throw Error("orientation: no aligning group element (fiber not an orbit)");
}

BundleFrame::BundleFrame(BundlePtr bundle, LocalSection section, Povm observable,
                         std::optional<UnitaryRep> frame_rep, double tol)
    : bundle_(std::move(bundle)),
      section_(std::move(section)),
      observable_(std::move(observable)),
      frame_rep_(std::move(frame_rep)) {
  if (section_.bundle() != bundle_) {
    throw Error("BundleFrame: section belongs to a different bundle");
  }
  for (int p : section_.domain()) {
    for (int b : bundle_->fiber(p)) region_.push_back(b);
  }
  std::sort(region_.begin(), region_.end());
  if (observable_.space().size() != static_cast<int>(region_.size())) {
    throw Error("BundleFrame: observable must live on π⁻¹(U)");
  }
  for (size_t i = 0; i < region_.size(); ++i) {
    if (observable_.space().label(static_cast<int>(i)) !=
        bundle_->total_label(region_[i])) {
      throw Error("BundleFrame: observable labels must match region points");
    }
  }
  if (frame_rep_) {
    if (frame_rep_->group() != bundle_->group()) {
      throw Error("BundleFrame: rep group differs from bundle group");
    }
    if (frame_rep_->dim() != observable_.dim()) {
      throw Error("BundleFrame: rep and observable dimensions differ");
    }
    const double violation = covariance_violation();
    if (violation > tol) {
      throw Error("BundleFrame: observable not covariant, violation " +
                  std::to_string(violation));
    }
  }
}

int BundleFrame::region_index(int b) const {
  auto it = std::lower_bound(region_.begin(), region_.end(), b);
  if (it == region_.end() || *it != b) {
    throw Error("BundleFrame: point outside the frame region");
  }
  return static_cast<int>(it - region_.begin());
}

BundleFrame BundleFrame::ideal(BundlePtr bundle, LocalSection section) {
  std::vector<int> region;
  for (int p : section.domain()) {
    for (int b : bundle->fiber(p)) region.push_back(b);
  }
  std::sort(region.begin(), region.end());
  const int n = static_cast<int>(region.size());
  auto idx = [&](int b) {
    return static_cast<int>(std::lower_bound(region.begin(), region.end(), b) -
                            region.begin());
  };
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int b : region) labels.push_back(bundle->total_label(b));
  Povm povm = Povm::ideal(SampleSpace(std::move(labels)));
  // Permutation rep e_b -> e_{b.g^{-1}}, covariant for the fiberwise action.
  const auto& group = bundle->group();
  std::vector<Matrix> mats;
  for (int g = 0; g < group->order(); ++g) {
    Matrix u = Matrix::Zero(n, n);
    const int ginv = group->inverse(g);
    for (int i = 0; i < n; ++i) u(idx(bundle->act(region[i], ginv)), i) = 1.0;
    mats.push_back(std::move(u));
  }
  UnitaryRep rep(group, std::move(mats));
  return BundleFrame(std::move(bundle), std::move(section), std::move(povm),
                     std::move(rep));
}

double BundleFrame::covariance_violation() const {
  if (!frame_rep_) {
    throw Error("BundleFrame: covariance requires a frame representation");
  }
  double worst = 0.0;
  for (int g = 0; g < bundle_->group()->order(); ++g) {
    for (size_t i = 0; i < region_.size(); ++i) {
      const Matrix lhs =
          frame_rep_->act_on_operator(observable_.effect(static_cast<int>(i)), g);
      const Matrix rhs =
          observable_.effect(region_index(bundle_->act(region_[i], g)));
      worst = std::max(worst, spectral_norm(lhs - rhs));
    }
  }
  return worst;
}

QuantumField::QuantumField(std::map<int, Matrix> values, UnitaryRep sys_rep)
    : values_(std::move(values)), sys_rep_(std::move(sys_rep)) {
  for (const auto& [p, v] : values_) {
    if (v.rows() != sys_rep_.dim() || v.cols() != sys_rep_.dim()) {
      throw Error("QuantumField: value dimension differs from the action");
    }
    if (!all_finite(v)) throw Error("QuantumField: entries must be finite");
  }
}

const Matrix& QuantumField::value(int p) const {
  auto it = values_.find(p);
  if (it == values_.end()) {
    throw Error("QuantumField: field undefined at base point " +
                std::to_string(p));
  }
  return it->second;
}

Matrix relativize_field(const QuantumField& field, const BundleFrame& frame) {
  const int dim = field.dim() * frame.dim();
  Matrix out = Matrix::Zero(dim, dim);
  for (size_t i = 0; i < frame.region().size(); ++i) {
    const int b = frame.region()[i];
    // Fiber coordinate w with σ(π(b)).w = b; acting by w (not its inverse)
    // is what makes the sum invariant under the diagonal action.
    const int w = frame.bundle()->group()->inverse(
        orientation(*frame.bundle(), frame.section(), b));
    out += tensor(field.sys_rep().act_on_operator(field.value(frame.bundle()->proj(b)), w),
                  frame.observable().effect(static_cast<int>(i)));
  }
  return out;
}

double field_invariance_violation(const QuantumField& field,
                                  const BundleFrame& frame) {
  if (!frame.frame_rep()) {
    throw Error("field_invariance_violation: frame carries no representation");
  }
  const Matrix yen = relativize_field(field, frame);
  double worst = 0.0;
  for (int g = 0; g < frame.bundle()->group()->order(); ++g) {
    const Matrix diag =
        tensor(field.sys_rep().matrix(g), frame.frame_rep()->matrix(g));
    worst = std::max(worst, spectral_norm(diag.adjoint() * yen * diag - yen));
  }
  return worst;
}

Matrix restrict_field(const QuantumField& field, const BundleFrame& frame,
                      const State& omega) {
  const Eigen::VectorXd mu = born_measure(frame.observable(), omega);
  Matrix out = Matrix::Zero(field.dim(), field.dim());
  for (size_t i = 0; i < frame.region().size(); ++i) {
    const int b = frame.region()[i];
    const int w = frame.bundle()->group()->inverse(
        orientation(*frame.bundle(), frame.section(), b));
    out += mu(static_cast<int>(i)) *
           field.sys_rep().act_on_operator(field.value(frame.bundle()->proj(b)), w);
  }
  return out;
}

BundleEmbedding::BundleEmbedding(BundlePtr sub, BundlePtr parent,
                                 SubgroupInclusion groups,
                                 std::vector<int> total_map,
                                 std::vector<int> base_map)
    : sub_(std::move(sub)),
      parent_(std::move(parent)),
      groups_(std::move(groups)),
      total_map_(std::move(total_map)),
      base_map_(std::move(base_map)) {
  if (groups_.sub() != sub_->group() || groups_.parent() != parent_->group()) {
    throw Error("BundleEmbedding: group inclusion does not match bundles");
  }
  if (total_map_.size() != static_cast<size_t>(sub_->total_size()) ||
      base_map_.size() != static_cast<size_t>(sub_->base_size())) {
    throw Error("BundleEmbedding: embeddings must be total");
  }
  {
    std::set<int> seen(total_map_.begin(), total_map_.end());
    if (seen.size() != total_map_.size()) {
      throw Error("BundleEmbedding: total-space embedding not injective");
    }
  }
  {
    std::set<int> seen(base_map_.begin(), base_map_.end());
    if (seen.size() != base_map_.size()) {
      throw Error("BundleEmbedding: base embedding not injective");
    }
  }
  for (int b = 0; b < sub_->total_size(); ++b) {
    if (total_map_[b] < 0 || total_map_[b] >= parent_->total_size()) {
      throw Error("BundleEmbedding: total image out of range");
    }
    // Commuting square π∘i = j∘π_R.
    if (parent_->proj(total_map_[b]) != base_map_[sub_->proj(b)]) {
      throw Error("BundleEmbedding: square π∘i = j∘π_R fails");
    }
    // H_R-equivariance of i.
    for (int h = 0; h < sub_->group()->order(); ++h) {
      if (parent_->act(total_map_[b], groups_.embed(h)) !=
          total_map_[sub_->act(b, h)]) {
        throw Error("BundleEmbedding: i is not equivariant");
      }
    }
  }
}

BundleFrame reduce_bundle_frame(const BundleFrame& sub_frame,
                                const BundleEmbedding& emb) {
  if (sub_frame.bundle() != emb.sub()) {
    throw Error("reduce_bundle_frame: frame lives on a different bundle");
  }
  const auto& parent = emb.parent();
  // Transported section i∘γ_R∘j⁻¹ over j(U_R).
  std::vector<int> domain;
  std::map<int, int> section_map;
  for (int p : sub_frame.section().domain()) {
    const int jp = emb.base(p);
    domain.push_back(jp);
    section_map[jp] = emb.total(sub_frame.section().at(p));
  }
  std::sort(domain.begin(), domain.end());
  LocalSection section(parent, std::move(domain), std::move(section_map));
  // Push the observable forward along i; zero effects off the image.
  std::vector<int> region;
  for (int p : section.domain()) {
    for (int b : parent->fiber(p)) region.push_back(b);
  }
  std::sort(region.begin(), region.end());
  std::vector<std::string> labels;
  for (int b : region) labels.push_back(parent->total_label(b));
  std::vector<Matrix> effects(region.size(),
                              Matrix::Zero(sub_frame.dim(), sub_frame.dim()));
  for (size_t i = 0; i < sub_frame.region().size(); ++i) {
    const int target = emb.total(sub_frame.region()[i]);
    const auto it = std::lower_bound(region.begin(), region.end(), target);
    if (it == region.end() || *it != target) {
      throw Error("reduce_bundle_frame: embedded point outside target region");
    }
    effects[it - region.begin()] =
        sub_frame.observable().effect(static_cast<int>(i));
  }
  Povm povm(SampleSpace(std::move(labels)), std::move(effects));
  return BundleFrame(parent, std::move(section), std::move(povm), std::nullopt);
}

double bundle_reduction_residual(const QuantumField& field,
                                 const BundleFrame& sub_frame,
                                 const BundleEmbedding& emb) {
  const BundleFrame reduced = reduce_bundle_frame(sub_frame, emb);
  const Matrix lhs = relativize_field(field, reduced);
  // Independent sub-bundle-side summation using the sub-bundle fiber
  // coordinates pushed through the group inclusion.
  Matrix rhs = Matrix::Zero(lhs.rows(), lhs.cols());
  for (size_t i = 0; i < sub_frame.region().size(); ++i) {
    const int b = sub_frame.region()[i];
    const int w = sub_frame.bundle()->group()->inverse(
        orientation(*sub_frame.bundle(), sub_frame.section(), b));
    const int p = emb.base(sub_frame.bundle()->proj(b));
    rhs += tensor(
        field.sys_rep().act_on_operator(field.value(p), emb.groups().embed(w)),
        sub_frame.observable().effect(static_cast<int>(i)));
  }
  return spectral_norm(lhs - rhs);
}

int operator_span_dim(const std::vector<Matrix>& ops, double tol) {
  if (ops.empty()) return 0;
  const Eigen::Index d2 = ops.front().size();
  Matrix stacked(d2, static_cast<Eigen::Index>(ops.size()));
  for (size_t i = 0; i < ops.size(); ++i) {
    stacked.col(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::VectorXcd>(ops[i].data(), d2);
  }
  Eigen::JacobiSVD<Matrix> svd(stacked);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > std::max(tol, 1e-12 * sv(0))) ++rank;
  }
  return rank;
}

namespace {

// Orthonormal basis (as matrices) of the span, via Gram-Schmidt at tol.
std::vector<Matrix> operator_basis(const std::vector<Matrix>& ops, double tol) {
  std::vector<Matrix> basis;
  for (const Matrix& op : ops) {
    Matrix v = op;
    for (const Matrix& b : basis) {
      const Complex overlap = (b.adjoint() * v).trace();
      v -= overlap * b;
    }
    const double norm = std::sqrt(std::abs((v.adjoint() * v).trace()));
    if (norm > tol) basis.push_back(v / norm);
  }
  return basis;
}

}  // namespace

AlgebraReport relational_local_algebra(const QuantumField& field,
                                       const BundleFrame& frame,
                                       const std::vector<State>& states,
                                       double tol) {
  if (frame.bundle()->group()->order() != 1) {
    throw Error("relational_local_algebra: frame group must be trivial");
  }
  AlgebraReport report;
  for (const State& omega : states) {
    report.observables.push_back(restrict_field(field, frame, omega));
  }
  report.span_dim = operator_span_dim(report.observables, tol);
  // Close the span under products; finite-dimensional stand-in for the
  // generated algebra.
  std::vector<Matrix> basis = operator_basis(report.observables, tol);
  while (true) {
    std::vector<Matrix> extended = basis;
    for (const Matrix& a : basis) {
      for (const Matrix& b : basis) extended.push_back(a * b);
    }
    std::vector<Matrix> next = operator_basis(extended, tol);
    if (next.size() == basis.size()) break;
    basis = std::move(next);
  }
  report.closure_dim = static_cast<int>(basis.size());
  return report;
}

FrameMorphism::FrameMorphism(Channel psi, std::map<int, int> theta)
    : psi_(std::move(psi)), theta_(std::move(theta)) {
  if (theta_.empty()) throw Error("FrameMorphism: empty bundle map");
}

int FrameMorphism::theta(int b) const {
  auto it = theta_.find(b);
  if (it == theta_.end()) {
    throw Error("FrameMorphism: theta undefined at point " + std::to_string(b));
  }
  return it->second;
}

std::map<int, int> base_map_of(const FrameMorphism& m, const BundleFrame& from,
                               const BundleFrame& to) {
  std::map<int, int> phi;
  for (int b : from.region()) {
    const int p = from.bundle()->proj(b);
    const int q = to.bundle()->proj(m.theta(b));
    auto [it, inserted] = phi.emplace(p, q);
    if (!inserted && it->second != q) {
      throw PreconditionError(
          "frame morphism: theta does not map fibers onto fibers");
    }
  }
  return phi;
}

void verify_frame_morphism(const FrameMorphism& m, const BundleFrame& from,
                           const BundleFrame& to, double tol) {
  // theta total on the source region, into the target region, surjective.
  std::set<int> image;
  for (int b : from.region()) {
    const int tb = m.theta(b);
    bool in_target = false;
    for (int c : to.region()) {
      if (c == tb) {
        in_target = true;
        break;
      }
    }
    if (!in_target) {
      throw PreconditionError("frame morphism: theta leaves the target region");
    }
    image.insert(tb);
  }
  if (image.size() != to.region().size()) {
    throw PreconditionError("frame morphism: theta is not surjective");
  }
  const auto phi = base_map_of(m, from, to);
  // Commuting square θ∘σ = σ'∘φ_θ.
  for (int p : from.section().domain()) {
    if (m.theta(from.section().at(p)) != to.section().at(phi.at(p))) {
      throw PreconditionError("frame morphism: sections are incompatible");
    }
  }
  // E_{R'} = ψ∘E_R∘θ⁻¹ on singletons.
  double worst = 0.0;
  for (size_t j = 0; j < to.region().size(); ++j) {
    Matrix pre = Matrix::Zero(from.dim(), from.dim());
    for (size_t i = 0; i < from.region().size(); ++i) {
      if (m.theta(from.region()[i]) == to.region()[j]) {
        pre += from.observable().effect(static_cast<int>(i));
      }
    }
    worst = std::max(
        worst, spectral_norm(m.psi().heisenberg(pre) -
                             to.observable().effect(static_cast<int>(j))));
  }
  if (worst > tol) {
    throw PreconditionError(
        "frame morphism: observables unrelated by psi∘E∘θ⁻¹, violation " +
        std::to_string(worst));
  }
  if (from.frame_rep() && to.frame_rep()) {
    const double equi =
        equivariance_violation(m.psi(), *from.frame_rep(), *to.frame_rep());
    if (equi > tol) {
      throw PreconditionError("frame morphism: channel not equivariant, violation " +
                              std::to_string(equi));
    }
  }
}

double frame_morphism_residual(const QuantumField& field,
                               const FrameMorphism& m, const BundleFrame& from,
                               const BundleFrame& to, double tol) {
  verify_frame_morphism(m, from, to, tol);
  const Matrix lhs = relativize_field(field, to);
  // Pull the field back along the base map and relativize with the source
  // frame.
  const auto phi = base_map_of(m, from, to);
  std::map<int, Matrix> pulled;
  for (const auto& [p, q] : phi) pulled[p] = field.value(q);
  const QuantumField composed(std::move(pulled), field.sys_rep());
  const Matrix rhs = m.psi().heisenberg_on_second(
      relativize_field(composed, from), field.dim());
  return spectral_norm(lhs - rhs);
}

}  // namespace qrf
