#pragma once

#include <vector>

#include "qrf/measure.hpp"
#include "qrf/operator_core.hpp"

namespace qrf {

/// Operator-valued function on a finite sample space.
class OperatorField {
 public:
  OperatorField(SampleSpace space, std::vector<Matrix> values);

  static OperatorField constant(SampleSpace space, const Matrix& value);

  const SampleSpace& space() const { return space_; }
  int dim() const { return dim_; }
  const Matrix& value(int x) const { return values_.at(x); }
  const std::vector<Matrix>& values() const { return values_; }

  /// Scalar function x ↦ tr[ρ f(x)].
  Eigen::VectorXcd pair_with(const State& rho) const;

 private:
  SampleSpace space_;
  std::vector<Matrix> values_;
  int dim_;
};

/// The operator-valued integral ∫ f ⊗ dE = Σ_x f(x) ⊗ E({x}) on
/// system ⊗ frame.
Matrix ov_integrate(const OperatorField& f, const Povm& e);

/// |tr[(ρ⊗ω) ∫f⊗dE] − Σ_x tr[ρ f(x)] μ^E_ω({x})| for given states; the
/// defining pairing of the integral.
double pairing_residual(const OperatorField& f, const Povm& e,
                        const State& rho, const State& omega);

/// ‖∫ (f∘φ) ⊗ dE − ∫ f ⊗ d(E∘φ⁻¹)‖ for a total map φ: E.space → f.space,
/// both sides summed independently.
double change_of_variables_residual(const OperatorField& f,
                                    const std::vector<int>& phi,
                                    const Povm& e);

/// ‖∫ f ⊗ d(ψ∘E) − (1⊗ψ)(∫ f ⊗ dE)‖.
double channel_interchange_residual(const OperatorField& f, const Povm& e,
                                    const Channel& psi);

}  // namespace qrf
