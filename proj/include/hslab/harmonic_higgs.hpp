#pragma once

#include "hslab/string_algebroid.hpp"

namespace hslab {

/// A positive Hermitian metric H = ⟨·, σ·⟩ on Q for an antilinear
/// involution σ preserving the pairing up to conjugation.
class CompatibleMetricH {
 public:
  /// The block family (g, −α tr_{V_0}, −α tr_{V_1}) for α > 0. For α < 0 the
  /// roles of V_0 and V_1 swap and the metric is (g, α tr_{V_0}, α tr_{V_1}).
  /// In the frame E_j both End entries read |α|. Throws std::invalid_argument
  /// for α = 0 or a non-positive ω.
  static CompatibleMetricH block(HermitianPtr h, const Scalar& alpha);
  /// Validates positivity and compatibility of an arbitrary metric; throws
  /// std::invalid_argument otherwise.
  static CompatibleMetricH make(HermitianPtr h, const Scalar& alpha, QMetric metric);

  const QMetric& metric() const { return metric_; }
  const Scalar& alpha() const { return alpha_; }
  const HermitianStructure& hermitian() const { return *h_; }
  const HermitianPtr& hermitian_ptr() const { return h_; }
  /// σ as a matrix acting on conjugated coefficients: σ(y) = S ȳ.
  SMat sigma_matrix() const;

 private:
  CompatibleMetricH(HermitianPtr h, Scalar alpha, QMetric metric)
      : h_(std::move(h)), alpha_(std::move(alpha)), metric_(std::move(metric)) {}
  HermitianPtr h_;
  Scalar alpha_;
  QMetric metric_;
};

/// Connection matrix plus 1-form-valued operator: D = (d + unitary) + self_adjoint.
/// For the Chern flavor, unitary is the Chern connection D^H and self_adjoint
/// the Higgs field φ, which is of type (1,0) but not H-self-adjoint.
struct Decomposition {
  enum class Flavor { UnitaryPsi, ChernPhi };
  QOperator unitary;
  QOperator self_adjoint;
  Flavor flavor = Flavor::UnitaryPsi;
};

/// D = ∇^H + Ψ with ∇^H H-unitary and Ψ H-self-adjoint. Throws
/// std::invalid_argument unless D is skew for the pairing.
Decomposition decompose_unitary(const QOperator& conn, const CompatibleMetricH& H);
/// D = D^H + φ with D^H the Chern connection of H and φ of type (1,0).
/// Throws std::invalid_argument unless every entry of D is a 1-form.
Decomposition decompose_chern(const QOperator& conn, const CompatibleMetricH& H);

/// d_∇ψ = dψ + [A ∧ ψ] for the connection matrix A.
QOperator covariant_exterior(const QOperator& conn, const QOperator& psi);
/// (∇)^*ψ = −Σ g^{ab} (∇_{e_a} ψ)(e_b) for an operator-valued 1-form, with the
/// Levi-Civita connection on the form part.
QOperator covariant_codifferential(const QOperator& conn, const QOperator& psi, const HermitianStructure& h);
/// J on the form part of each entry.
QOperator apply_J(const QOperator& a);
/// J on vectors: J Z_j = i Z_j, J Z̄_j = −i Z̄_j.
InvariantVector apply_J(const InvariantVector& v);

struct MomentResiduals {
  QOperator i;  // (F_∇ + ½[Ψ∧Ψ]) ∧ ω^{n−1}
  QOperator j;  // ∇^*(JΨ) − i_{Jθ♯}Ψ
  QOperator k;  // ∇^*Ψ + i_{θ♯}Ψ
};

/// Throws std::invalid_argument for the Chern flavor.
MomentResiduals moment_residuals(const Decomposition& dec, const HermitianStructure& h);
/// The K component alone.
QOperator moment_residual_k(const Decomposition& dec, const HermitianStructure& h);

/// ∇^*Ψ + i_{θ♯}Ψ for the unitary decomposition of D^G, assembled block-wise
/// from U(V) = −i_V(d^*F_0 + i_{θ♯}F_0 + *(F_0 ∧ *d^cω)) and V(r_0) = α⟨F_1, F_0⟩r_0
/// as [[0, −U†, 0], [U, 0, −V†], [0, V, 0]] with adjoints for G. For α < 0
/// the End blocks swap.
QOperator harmonic_residual(const SystemParams& s, const CompatibleMetricH& H);

/// ∂̄_Q φ for the Higgs field φ of D^G, a matrix of (1,1)-forms.
QOperator higgs_dbar(const SystemParams& s, const CompatibleMetricH& H);

struct HiggsResiduals {
  QOperator first;   // (F_H + ½∂̄_Qφ − ½∂^Hφ^{*H}) ∧ ω^{n−1}
  QOperator second;  // (∂̄_Qφ + ∂^Hφ^{*H}) ∧ ω^{n−1}
  QOperator third;   // ∂^Hφ + ½[φ∧φ]
  QOperator k;       // (F_H + ½[φ∧φ^{*H}]) ∧ ω^{n−1}
  QOperator dbar_phi_omega;  // ∂̄_Qφ ∧ ω^{n−1}
};

/// Throws std::invalid_argument for the unitary flavor.
HiggsResiduals higgs_equation_residuals(const Decomposition& dec, const CompatibleMetricH& H);

}  // namespace hslab
