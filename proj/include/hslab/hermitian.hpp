#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "hslab/exterior.hpp"
#include "hslab/linalg.hpp"

namespace hslab {

/// Christoffel symbols Γ^c_{ab} with ∇_{e_a} e_b = Σ_c Γ^c_{ab} e_c on the
/// complexified invariant frame.
struct ConnectionCoefficients {
  enum class Kind { LeviCivita, Bismut };
  Kind kind = Kind::LeviCivita;
  int dim = 0;
  std::vector<Scalar> gamma;

  const Scalar& operator()(int a, int b, int c) const { return gamma[(a * dim + b) * dim + c]; }
  Scalar& operator()(int a, int b, int c) { return gamma[(a * dim + b) * dim + c]; }
};

/// Invariant Hermitian metric given by its fundamental form
/// ω = (i/2) Σ h_{jk} ω_j ∧ ω̄_k.
///
/// Everything metric-dependent that does not involve the bundle data is
/// precomputed here: the complex-bilinear metric on the frame
/// (Z_1..Z_n, Z̄_1..Z̄_n), its inverse, the volume form ω^n/n! and a Hodge
/// star table. Instances are immutable.
class HermitianStructure {
 public:
  /// Throws std::invalid_argument unless ω is a real (1,1)-form whose
  /// coefficients are π-free constants. Positivity is recorded, not
  /// required; see is_positive().
  static std::shared_ptr<const HermitianStructure> create(const InvariantForm& omega);

  const NilmanifoldModel* model() const { return model_; }
  const InvariantForm& omega() const { return omega_; }
  int n() const { return model_->n(); }
  int dim() const { return model_->dim(); }

  /// h_{jk}, Hermitian.
  const GMat& hermitian_matrix() const { return h_; }
  /// g(e_a, e_b) on the complexified frame; g(Z_j, Z̄_k) = h_{jk}/2.
  const GMat& g() const { return g_; }
  const GMat& g_inv() const { return g_inv_; }

  /// Exact leading principal minors of h (real rationals).
  const std::vector<Rational>& leading_minors() const { return minors_; }
  /// Smallest eigenvalue of h in floating point.
  double min_eigenvalue() const { return min_eig_; }
  /// All leading minors strictly positive.
  bool is_positive() const { return positive_; }

  /// ω^n/n!.
  const InvariantForm& volume() const { return volume_; }
  /// Hodge star of a basis monomial.
  const InvariantForm& star_monomial(Mask m) const { return star_table_.at(m); }
  /// Levi-Civita coefficients, computed on first use.
  const ConnectionCoefficients& levi_civita() const;
  /// Bismut coefficients, computed on first use.
  const ConnectionCoefficients& bismut() const;

 private:
  HermitianStructure() = default;

  const NilmanifoldModel* model_ = nullptr;
  InvariantForm omega_;
  GMat h_, g_, g_inv_;
  std::vector<Rational> minors_;
  double min_eig_ = 0;
  bool positive_ = false;
  InvariantForm volume_;
  std::vector<InvariantForm> star_table_;
  mutable std::once_flag lc_once_;
  mutable ConnectionCoefficients lc_;
  mutable std::once_flag bismut_once_;
  mutable ConnectionCoefficients bismut_;
};

using HermitianPtr = std::shared_ptr<const HermitianStructure>;

/// C-linear Hodge star, orientation ω^n/n! positive.
InvariantForm hodge_star(const InvariantForm& a, const HermitianStructure& h);
/// d^* = −*d*.
InvariantForm codifferential(const InvariantForm& a, const HermitianStructure& h);
/// θ = J d^*ω.
InvariantForm lee_form(const HermitianStructure& h);
/// Metric dual vector of a 1-form.
InvariantVector sharp(const InvariantForm& a, const HermitianStructure& h);
/// Metric dual 1-form of a vector.
InvariantForm flat(const InvariantVector& v, const HermitianStructure& h);
/// g(X, Y), complex bilinear.
Scalar metric(const InvariantVector& x, const InvariantVector& y, const HermitianStructure& h);
/// Hermitian L² pairing λ(a ∧ *conj(b)) / λ(vol).
Scalar inner_product(const InvariantForm& a, const InvariantForm& b, const HermitianStructure& h);
/// Σ g^{ac} g^{bd} F_{ab} G_{cd} for 2-forms.
Scalar frame_contraction(const InvariantForm& f, const InvariantForm& g, const HermitianStructure& h);
/// a(e_i, e_j, e_k) for a 3-form.
Scalar eval3(const InvariantForm& a, int i, int j, int k);

ConnectionCoefficients levi_civita(const HermitianStructure& h);
/// ∇^- = ∇ + ½ g^{-1} d^cω, i.e. g(∇^-_a e_b, e_c) = g(∇_a e_b, e_c) + ½ d^cω(e_a, e_b, e_c).
ConnectionCoefficients bismut(const HermitianStructure& h);
/// Torsion components T^c_{ab} of ∇_a e_b − ∇_b e_a − [e_a, e_b].
std::vector<Scalar> torsion(const ConnectionCoefficients& conn, const NilmanifoldModel& model);

/// Integration functional: top coefficient of a relative to the reference
/// volume (i/2)^n ω_1∧ω̄_1∧…∧ω_n∧ω̄_n of total mass one.
Scalar integrate(const InvariantForm& a);

}  // namespace hslab
