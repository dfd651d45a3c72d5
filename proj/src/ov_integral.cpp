#include "qrf/ov_integral.hpp"

namespace qrf {

OperatorField::OperatorField(SampleSpace space, std::vector<Matrix> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != static_cast<size_t>(space_.size())) {
    throw Error("OperatorField: need one value per sample point");
  }
  dim_ = static_cast<int>(values_.front().rows());
  for (const Matrix& v : values_) {
    if (v.rows() != dim_ || v.cols() != dim_) {
      throw Error("OperatorField: values must share dimension");
    }
    if (!all_finite(v)) throw Error("OperatorField: entries must be finite");
  }
}

OperatorField OperatorField::constant(SampleSpace space, const Matrix& value) {
  std::vector<Matrix> values(space.size(), value);
  return OperatorField(std::move(space), std::move(values));
}

Eigen::VectorXcd OperatorField::pair_with(const State& rho) const {
  if (rho.dim() != dim_) throw Error("OperatorField::pair_with: dim mismatch");
  Eigen::VectorXcd out(space_.size());
  for (int x = 0; x < space_.size(); ++x) {
    out(x) = (rho.op() * values_[x]).trace();
  }
  return out;
}

Matrix ov_integrate(const OperatorField& f, const Povm& e) {
  if (!(f.space() == e.space())) {
    throw Error("ov_integrate: field and POVM sample spaces differ");
  }
  const int dim = f.dim() * e.dim();
  Matrix out = Matrix::Zero(dim, dim);
  for (int x = 0; x < f.space().size(); ++x) {
    out += tensor(f.value(x), e.effect(x));
  }
  return out;
}

double pairing_residual(const OperatorField& f, const Povm& e,
                        const State& rho, const State& omega) {
  const Matrix integral = ov_integrate(f, e);
  const State product = State::unchecked(tensor(rho.op(), omega.op()));
  const Complex lhs = (product.op() * integral).trace();
  const Eigen::VectorXd mu = born_measure(e, omega);
  Complex rhs = 0.0;
  for (int x = 0; x < f.space().size(); ++x) {
    rhs += (rho.op() * f.value(x)).trace() * mu(x);
  }
  return std::abs(lhs - rhs);
}

double change_of_variables_residual(const OperatorField& f,
                                    const std::vector<int>& phi,
                                    const Povm& e) {
  if (phi.size() != static_cast<size_t>(e.space().size())) {
    throw Error("change_of_variables_residual: phi must be total");
  }
  // Left side: pull the field back along phi and integrate against E.
  std::vector<Matrix> pulled;
  pulled.reserve(e.space().size());
  for (int x = 0; x < e.space().size(); ++x) {
    const int y = phi[x];
    if (y < 0 || y >= f.space().size()) {
      throw Error("change_of_variables_residual: phi image out of range");
    }
    pulled.push_back(f.value(y));
  }
  const Matrix lhs =
      ov_integrate(OperatorField(e.space(), std::move(pulled)), e);
  // Right side: push the POVM forward and integrate f against it.
  const Matrix rhs = ov_integrate(f, push_forward(e, phi, f.space()));
  return spectral_norm(lhs - rhs);
}

double channel_interchange_residual(const OperatorField& f, const Povm& e,
                                    const Channel& psi) {
  const Matrix lhs = ov_integrate(f, compose_with_channel(psi, e));
  const Matrix rhs = psi.heisenberg_on_second(ov_integrate(f, e), f.dim());
  return spectral_norm(lhs - rhs);
}

}  // namespace qrf
