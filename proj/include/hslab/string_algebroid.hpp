#pragma once

#include <vector>

#include "hslab/bundle.hpp"
#include "hslab/qoperator.hpp"

namespace hslab {

/// Frame index of End V_0 and End V_1 in [e_1..e_2n | E_0 | E_1].
inline int end_index(const HermitianStructure& h, int j) { return h.dim() + j; }

/// Change of frame from the holomorphic splitting
/// [Z_1..Z_n | E_0 | E_1 | ω_1..ω_n] of T^{1,0} ⊕ ad P ⊕ T*_{1,0} to
/// [e_1..e_2n | E_0 | E_1], via V + r + ξ ↦ V − ½ g^{-1}ξ + r. Columns are
/// images of holomorphic frame elements.
SMat bismut_iso(const HermitianStructure& h);

/// Complex-bilinear pairing diag(−g, −α, α) on [e | E_0 | E_1].
SMat pairing_matrix(const HermitianStructure& h, const Scalar& alpha);
Scalar pairing(const QSection& x, const QSection& y, const HermitianStructure& h, const Scalar& alpha);

/// Real structure of Q: complex conjugation on T⊗C, the u(1) conjugation
/// r ↦ −r̄ on End V_j.
QSection conjugate_section(const QSection& x, const HermitianStructure& h);
/// σ(s) = −s̄, the involution with G = ⟨·, σ·⟩.
QSection sigma(const QSection& x, const HermitianStructure& h);

/// Dolbeault operator of Q as a matrix of (0,1)-forms on the holomorphic
/// frame [Z | E_0 | E_1 | ω]. T*-valued (0,1)-forms are read as
/// W ↦ i_W β for β a (1,1)-form. Throws std::invalid_argument unless the
/// (1,0) coframe is closed under ∂̄ (holomorphically parallelizable model).
QOperator dolbeault_Q_holomorphic(const SystemParams& s);
/// The same operator transported to [e | E_0 | E_1].
QOperator dolbeault_Q(const SystemParams& s);
/// ∂̄_Q applied to a constant section of [e | E_0 | E_1].
std::vector<InvariantForm> dolbeault_Q(const QSection& x, const SystemParams& s);

/// The Hom(A_P, T*)-block of the holomorphic Dolbeault operator: rows ω_k,
/// columns Z_b, E_0, E_1 of the holomorphic frame, zero elsewhere.
QOperator extension_class_gamma(const SystemParams& s);

/// G = (g, α tr_{V_0}, −α tr_{V_1}) as a Hermitian form G(x, y) = ⟨x, σy⟩
/// with σ the conjugation of Q followed by −1; the End real structure is
/// that of u(1), so in the frame E_j the entries read (−α, α). Throws
/// std::invalid_argument for α = 0.
QMetric metric_G(const HermitianStructure& h, const Scalar& alpha);

/// The orthogonal connection D^G on [e | E_0 | E_1] as a matrix of 1-forms.
QOperator connection_DG(const SystemParams& s);
/// F_{D^G} ∧ ω^{n−1}.
QOperator he_residual_G(const SystemParams& s);

/// ⟨A x, y⟩ + ⟨x, A y⟩ for every frame pair: zero iff A is skew for the pairing.
QOperator pairing_skewness(const QOperator& a, const HermitianStructure& h, const Scalar& alpha);

enum class InvarianceMode { Holomorphic, DPreserved };

struct SubbundleVerdict {
  bool isotropic = false;
  bool invariant = false;
  /// First Chern form of the subbundle from the restricted connection; only
  /// meaningful when invariant.
  InvariantForm c1;
  Scalar degree;
  Scalar slope;
};

/// Isotropy, invariance under ∂̄_Q or D^G and slope against the closed
/// (2n−2)-form b of the span of constant, π-free sections. Throws
/// std::invalid_argument for a dependent or π-dependent span.
SubbundleVerdict check_invariant_subbundle(const std::vector<QSection>& span, const SystemParams& s,
                                           InvarianceMode mode, const InvariantForm& b);

/// The image of T*_{1,0} in [e | E_0 | E_1].
std::vector<QSection> cotangent_span(const HermitianStructure& h);

}  // namespace hslab
