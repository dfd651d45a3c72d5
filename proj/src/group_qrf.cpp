#include "qrf/group_qrf.hpp"

namespace qrf {

namespace {

std::vector<std::vector<int>> right_translation_action(const FiniteGroup& g) {
  std::vector<std::vector<int>> action(g.order(), std::vector<int>(g.order()));
  for (int h = 0; h < g.order(); ++h) {
    for (int x = 0; x < g.order(); ++x) action[h][x] = g.op(x, h);
  }
  return action;
}

OperatorField translated_field(const Matrix& a, const FiniteGroup& g,
                               const UnitaryRep& sys) {
  std::vector<Matrix> values;
  values.reserve(g.order());
  for (int i = 0; i < g.order(); ++i) {
    values.push_back(sys.act_on_operator(a, i));
  }
  return OperatorField(SampleSpace::indexed(g.order()), std::move(values));
}

}  // namespace

GroupFrame::GroupFrame(GroupPtr group, Povm observable,
                       std::optional<UnitaryRep> frame_rep, double tol)
    : group_(std::move(group)),
      observable_(std::move(observable)),
      frame_rep_(std::move(frame_rep)) {
  if (!group_) throw Error("GroupFrame: null group");
  if (observable_.space().size() != group_->order()) {
    throw Error("GroupFrame: observable must live on the group carrier");
  }
  if (frame_rep_) {
    if (frame_rep_->group() != group_) {
      throw Error("GroupFrame: rep defined on a different group");
    }
    if (frame_rep_->dim() != observable_.dim()) {
      throw Error("GroupFrame: rep and observable dimensions differ");
    }
    const double violation = covariance_violation();
    if (violation > tol) {
      throw Error("GroupFrame: observable not covariant, violation " +
                  std::to_string(violation));
    }
  }
}

GroupFrame GroupFrame::regular(GroupPtr group) {
  Povm povm = Povm::ideal(SampleSpace::indexed(group->order()));
  UnitaryRep rep = UnitaryRep::regular(group);
  return GroupFrame(group, std::move(povm), std::move(rep));
}

CovariantPovm GroupFrame::covariant_observable() const {
  if (!frame_rep_) {
    throw Error("GroupFrame: covariance requires a frame representation");
  }
  return CovariantPovm(observable_, *frame_rep_,
                       right_translation_action(*group_));
}

double GroupFrame::covariance_violation() const {
  if (!frame_rep_) {
    throw Error("GroupFrame: covariance requires a frame representation");
  }
  const auto action = right_translation_action(*group_);
  double worst = 0.0;
  for (int g = 0; g < group_->order(); ++g) {
    for (int x = 0; x < group_->order(); ++x) {
      const Matrix lhs = frame_rep_->act_on_operator(observable_.effect(x), g);
      const Matrix rhs = observable_.effect(action[g][x]);
      worst = std::max(worst, spectral_norm(lhs - rhs));
    }
  }
  return worst;
}

State relative_state(const State& rho, const State& omega,
                     const GroupFrame& frame, const UnitaryRep& sys) {
  if (omega.dim() != frame.dim()) {
    throw Error("relative_state: frame state dimension mismatch");
  }
  return relative_state_classical(rho, born_measure(frame.observable(), omega),
                                  sys);
}

State relative_state_classical(const State& rho, const Eigen::VectorXd& mu,
                               const UnitaryRep& sys) {
  if (mu.size() != sys.group()->order()) {
    throw Error("relative_state_classical: measure length mismatch");
  }
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (int g = 0; g < mu.size(); ++g) {
    out += mu(g) * sys.act_on_state(g, rho).op();
  }
  return State::unchecked(out);
}

Matrix relativize(const Matrix& a, const GroupFrame& frame,
                  const UnitaryRep& sys) {
  if (sys.group() != frame.group()) {
    throw Error("relativize: system and frame must share the group");
  }
  return ov_integrate(translated_field(a, *frame.group(), sys),
                      frame.observable());
}

double duality_residual(const State& rho, const State& omega, const Matrix& a,
                        const GroupFrame& frame, const UnitaryRep& sys) {
  const State rel = relative_state(rho, omega, frame, sys);
  const Complex lhs = (rel.op() * a).trace();
  const Matrix yen = relativize(a, frame, sys);
  const Complex rhs = (tensor(rho.op(), omega.op()) * yen).trace();
  return std::abs(lhs - rhs);
}

double invariance_violation(const Matrix& a, const GroupFrame& frame,
                            const UnitaryRep& sys) {
  if (!frame.frame_rep()) {
    throw Error("invariance_violation: frame carries no representation");
  }
  const Matrix yen = relativize(a, frame, sys);
  double worst = 0.0;
  for (int h = 0; h < frame.group()->order(); ++h) {
    const Matrix diag = tensor(sys.matrix(h), frame.frame_rep()->matrix(h));
    const Matrix moved = diag.adjoint() * yen * diag;
    worst = std::max(worst, spectral_norm(moved - yen));
  }
  return worst;
}

Matrix restrict_observable(const Matrix& a, const State& omega,
                           const GroupFrame& frame, const UnitaryRep& sys) {
  const Eigen::VectorXd mu = born_measure(frame.observable(), omega);
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (int g = 0; g < mu.size(); ++g) {
    out += mu(g) * sys.act_on_operator(a, g);
  }
  return out;
}

std::vector<double> localizability_probe(const Matrix& a,
                                         const GroupFrame& frame,
                                         const UnitaryRep& sys,
                                         const std::vector<State>& family) {
  if (family.empty()) throw Error("localizability_probe: empty family");
  std::vector<double> curve;
  curve.reserve(family.size());
  for (const State& omega : family) {
    curve.push_back(
        spectral_norm(restrict_observable(a, omega, frame, sys) - a));
  }
  return curve;
}

GroupFrame reduce_frame(const GroupFrame& sub_frame,
                        const SubgroupInclusion& inc) {
  if (inc.sub() != sub_frame.group()) {
    throw Error("reduce_frame: inclusion does not match the frame group");
  }
  const int parent_order = inc.parent()->order();
  Povm pushed = push_forward(sub_frame.observable(), inc.embedding(),
                             SampleSpace::indexed(parent_order));
  return GroupFrame(inc.parent(), std::move(pushed), std::nullopt);
}

double reduction_residual(const Matrix& a, const GroupFrame& sub_frame,
                          const SubgroupInclusion& inc, const UnitaryRep& sys) {
  if (sys.group() != inc.parent()) {
    throw Error("reduction_residual: system rep must live on the parent");
  }
  const GroupFrame full = reduce_frame(sub_frame, inc);
  const Matrix lhs = relativize(a, full, sys);
  // Independent subgroup-side summation.
  Matrix rhs = Matrix::Zero(lhs.rows(), lhs.cols());
  for (int h = 0; h < inc.sub()->order(); ++h) {
    rhs += tensor(sys.act_on_operator(a, inc.embed(h)),
                  sub_frame.observable().effect(h));
  }
  return spectral_norm(lhs - rhs);
}

double equivariance_violation(const Channel& psi, const UnitaryRep& rep_out,
                              const UnitaryRep& rep_in) {
  if (rep_out.group() != rep_in.group()) {
    throw Error("equivariance_violation: reps must share the group");
  }
  if (psi.dim_out() != rep_out.dim() || psi.dim_in() != rep_in.dim()) {
    throw Error("equivariance_violation: channel dimensions mismatch");
  }
  const int d = rep_out.dim();
  double worst = 0.0;
  for (int g = 0; g < rep_out.group()->order(); ++g) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        Matrix unit = Matrix::Zero(d, d);
        unit(i, j) = 1.0;
        const Matrix lhs = psi.heisenberg(rep_out.act_on_operator(unit, g));
        const Matrix rhs = rep_in.act_on_operator(psi.heisenberg(unit), g);
        worst = std::max(worst, spectral_norm(lhs - rhs));
      }
    }
  }
  return worst;
}

double external_frame_transform_residual(const Matrix& a,
                                         const GroupFrame& frame_r,
                                         const GroupFrame& frame_r2,
                                         const Channel& psi,
                                         const UnitaryRep& sys, double tol) {
  if (frame_r.group() != frame_r2.group()) {
    throw PreconditionError("external_frame_transform: frames share no group");
  }
  if (!frame_r.frame_rep() || !frame_r2.frame_rep()) {
    throw PreconditionError(
        "external_frame_transform: both frames need representations");
  }
  const double equi = equivariance_violation(psi, *frame_r.frame_rep(),
                                             *frame_r2.frame_rep());
  if (equi > tol) {
    throw PreconditionError(
        "external_frame_transform: channel not equivariant, violation " +
        std::to_string(equi));
  }
  // E_{R'} = ψ ∘ E_R on every singleton.
  double match = 0.0;
  for (int g = 0; g < frame_r.group()->order(); ++g) {
    match = std::max(
        match, spectral_norm(psi.heisenberg(frame_r.observable().effect(g)) -
                             frame_r2.observable().effect(g)));
  }
  if (match > tol) {
    throw PreconditionError(
        "external_frame_transform: E_R' != psi∘E_R, violation " +
        std::to_string(match));
  }
  const Matrix lhs = relativize(a, frame_r2, sys);
  const Matrix rhs =
      psi.heisenberg_on_second(relativize(a, frame_r, sys), sys.dim());
  return spectral_norm(lhs - rhs);
}

Matrix relational_local_observable(const OperatorField& field,
                                   const GroupFrame& translation_frame,
                                   const State& omega, double tol) {
  if (field.space().size() != translation_frame.group()->order()) {
    throw Error("relational_local_observable: field must cover the group");
  }
  const Eigen::VectorXd mu =
      born_measure(translation_frame.observable(), omega);
  Matrix out = Matrix::Zero(field.dim(), field.dim());
  for (int x = 0; x < mu.size(); ++x) {
    if (mu(x) > tol) out += mu(x) * field.value(x);
  }
  return out;
}

Matrix relational_local_observable_gauged(const OperatorField& field,
                                          const UnitaryRep& gauge_rep,
                                          const Povm& product_observable,
                                          const State& omega, double tol) {
  const int nh = gauge_rep.group()->order();
  const int nx = field.space().size();
  if (product_observable.space().size() != nx * nh) {
    throw Error(
        "relational_local_observable_gauged: sample space must be T x H");
  }
  const Eigen::VectorXd mu = born_measure(product_observable, omega);
  Matrix out = Matrix::Zero(field.dim(), field.dim());
  for (int x = 0; x < nx; ++x) {
    for (int h = 0; h < nh; ++h) {
      const double w = mu(x * nh + h);
      if (w > tol) {
        out += w * gauge_rep.act_on_operator(field.value(x), h);
      }
    }
  }
  return out;
}

}  // namespace qrf
