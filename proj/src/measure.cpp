#include "qrf/measure.hpp"

#include <set>

namespace qrf {

SampleSpace::SampleSpace(std::vector<std::string> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw Error("SampleSpace: must be nonempty");
  std::set<std::string> seen;
  for (const auto& p : points_) {
    if (!seen.insert(p).second) {
      throw Error("SampleSpace: duplicate label '" + p + "'");
    }
  }
}

SampleSpace SampleSpace::indexed(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return SampleSpace(std::move(labels));
}

int SampleSpace::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (points_[i] == label) return i;
  }
  throw Error("SampleSpace: unknown label '" + label + "'");
}

Povm::Povm(SampleSpace space, std::vector<Matrix> effects, double tol)
    : space_(std::move(space)), effects_(std::move(effects)) {
  if (effects_.size() != static_cast<size_t>(space_.size())) {
    throw Error("Povm: need one effect per sample point");
  }
  dim_ = static_cast<int>(effects_.front().rows());
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (size_t i = 0; i < effects_.size(); ++i) {
    Effect checked(effects_[i], tol);  // validates each atomic effect
    if (effects_[i].rows() != dim_ || effects_[i].cols() != dim_) {
      throw Error("Povm: effects must share dimension");
    }
    sum += effects_[i];
  }
  if (max_abs_diff(sum, Matrix::Identity(dim_, dim_)) > tol) {
    throw Error("Povm: normalization fails, effects do not sum to identity");
  }
}

Povm Povm::ideal(SampleSpace space) {
  const int n = space.size();
  std::vector<Matrix> effects;
  effects.reserve(n);
  for (int i = 0; i < n; ++i) {
    Matrix p = Matrix::Zero(n, n);
    p(i, i) = 1.0;
    effects.push_back(std::move(p));
  }
  return Povm(std::move(space), std::move(effects));
}

Matrix Povm::effect_of(const std::vector<int>& subset) const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (int x : subset) out += effect(x);
  return out;
}

bool Povm::is_sharp(double tol) const {
  for (const Matrix& e : effects_) {
    if (max_abs_diff(e * e, e) > tol) return false;
  }
  return true;
}

Eigen::VectorXd born_measure(const Povm& povm, const State& omega, double tol) {
  if (omega.dim() != povm.dim()) {
    throw Error("born_measure: dimension mismatch");
  }
  Eigen::VectorXd mu(povm.space().size());
  double total = 0.0;
  for (int x = 0; x < povm.space().size(); ++x) {
    const Complex v = (omega.op() * povm.effect(x)).trace();
    if (std::abs(v.imag()) > tol || v.real() < -tol) {
      throw Error("born_measure: probability outside [0,1] at point " +
                  povm.space().label(x));
    }
    mu(x) = v.real();
    total += v.real();
  }
  if (std::abs(total - 1.0) > tol) {
    throw Error("born_measure: probabilities do not sum to 1");
  }
  return mu;
}

Povm push_forward(const Povm& povm, const std::vector<int>& f,
                  SampleSpace target) {
  if (f.size() != static_cast<size_t>(povm.space().size())) {
    throw Error("push_forward: map must be total on the source space");
  }
  std::vector<Matrix> effects(target.size(),
                              Matrix::Zero(povm.dim(), povm.dim()));
  for (int x = 0; x < povm.space().size(); ++x) {
    const int y = f[x];
    if (y < 0 || y >= target.size()) {
      throw Error("push_forward: image point out of range");
    }
    effects[y] += povm.effect(x);
  }
  return Povm(std::move(target), std::move(effects));
}

Povm compose_with_channel(const Channel& psi, const Povm& povm) {
  if (psi.dim_out() != povm.dim()) {
    throw Error("compose_with_channel: dimension mismatch");
  }
  std::vector<Matrix> effects;
  effects.reserve(povm.space().size());
  for (const Matrix& e : povm.effects()) effects.push_back(psi.heisenberg(e));
  return Povm(povm.space(), std::move(effects));
}

CovariantPovm::CovariantPovm(Povm povm, UnitaryRep rep,
                             std::vector<std::vector<int>> space_action)
    : povm_(std::move(povm)),
      rep_(std::move(rep)),
      space_action_(std::move(space_action)) {
  if (rep_.dim() != povm_.dim()) {
    throw Error("CovariantPovm: rep and POVM dimensions differ");
  }
  const int order = rep_.group()->order();
  const int n = povm_.space().size();
  if (static_cast<int>(space_action_.size()) != order) {
    throw Error("CovariantPovm: action needs one row per group element");
  }
  for (const auto& row : space_action_) {
    if (static_cast<int>(row.size()) != n) {
      throw Error("CovariantPovm: action row has wrong length");
    }
    std::vector<bool> seen(n, false);
    for (int v : row) {
      if (v < 0 || v >= n || seen[v]) {
        throw Error("CovariantPovm: action row is not a permutation");
      }
      seen[v] = true;
    }
  }
  const auto& g = *rep_.group();
  for (int x = 0; x < n; ++x) {
    if (space_action_[g.identity()][x] != x) {
      throw Error("CovariantPovm: identity must act trivially on points");
    }
  }
  // Right-action law: (x.g).h = x.(gh).
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      for (int x = 0; x < n; ++x) {
        if (space_action_[b][space_action_[a][x]] !=
            space_action_[g.op(a, b)][x]) {
          throw Error("CovariantPovm: space action is not a right action");
        }
      }
    }
  }
}

double CovariantPovm::covariance_violation() const {
  double worst = 0.0;
  for (int g = 0; g < rep_.group()->order(); ++g) {
    for (int x = 0; x < povm_.space().size(); ++x) {
      const Matrix lhs = rep_.act_on_operator(povm_.effect(x), g);
      const Matrix rhs = povm_.effect(act_on_point(x, g));
      worst = std::max(worst, spectral_norm(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace qrf
