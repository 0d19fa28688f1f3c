#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "hslab/hermitian.hpp"

namespace hslab {

/// Raised when tr F_0² = tr F_1², so no coupling constant can balance the
/// Bianchi identity.
struct DegenerateCoupling : std::domain_error {
  using std::domain_error::domain_error;
};

/// Line bundle on the torus base with curvature
/// F = π(m(ω_{11̄}−ω_{22̄}) + n(ω_{12̄}+ω_{21̄}) + ip(ω_{12̄}−ω_{21̄})).
struct LineBundleTriple {
  enum class Role { V0, V1 };
  int64_t m = 0, n = 0, p = 0;
  Role role = Role::V0;

  int64_t norm2() const { return m * m + n * n + p * p; }
  bool is_zero() const { return m == 0 && n == 0 && p == 0; }
  friend bool operator==(const LineBundleTriple& a, const LineBundleTriple& b) {
    return a.m == b.m && a.n == b.n && a.p == b.p && a.role == b.role;
  }
};

/// Throws std::invalid_argument for the zero triple or a model with n < 2.
InvariantForm curvature_from_triple(const LineBundleTriple& t, const NilmanifoldModel* model);

/// F ∧ ω^{n−1}.
InvariantForm hym_residual(const InvariantForm& f, const HermitianStructure& h);

struct CohClass {
  enum class Flavor { DeRham, BottChern, Aeppli };
  InvariantForm rep;
  Flavor flavor;

  /// Verifies d rep = 0 (de Rham, Bott-Chern) or dd^c rep = 0 (Aeppli).
  static CohClass make(InvariantForm rep, Flavor flavor);
};

/// λ(c ∧ b) / rank; c a closed 2-form, b a closed (2n−2)-form.
Scalar degree_and_slope(const CohClass& c, const CohClass& b, int rank);

struct Ch2Result {
  bool holds = false;
  /// Invariant (1,1)-form β with dd^c β = F_0∧F_0 − F_1∧F_1 when holds.
  InvariantForm witness;
};

/// Decides ch_2(V_0) = ch_2(V_1) in invariant Bott-Chern cohomology, i.e.
/// whether F_0² − F_1² is dd^c of an invariant (1,1)-form. Throws
/// std::invalid_argument unless both inputs are closed (1,1)-forms.
Ch2Result ch2_constraint(const InvariantForm& f0, const InvariantForm& f1);

/// ch_2 = c_1²/2 with c_1 = (i/2π) F.
InvariantForm ch2_line(const InvariantForm& f);

/// First Chern form (i/2π) F.
InvariantForm c1_line(const InvariantForm& f);

/// The unique α with dd^cω − α(F_0² − F_1²) = 0. Throws DegenerateCoupling
/// if F_0² = F_1², std::domain_error if dd^cω is not proportional to
/// F_0² − F_1².
Scalar alpha_solve(const InvariantForm& f0, const InvariantForm& f1, const HermitianStructure& h);

/// Exact ‖Ω‖²_ω defined by i^{n²} Ω∧Ω̄ = ‖Ω‖²_ω ω^n/n!. Throws for Ω = 0 or
/// Ω not of type (n,0).
Scalar omega_norm_squared(const InvariantForm& big_omega, const HermitianStructure& h);
/// Float rendering of ‖Ω‖_ω.
double omega_norm(const InvariantForm& big_omega, const HermitianStructure& h);

/// d^c log‖Ω‖_ω − d^*ω; the first term vanishes for invariant data.
InvariantForm conformally_balanced_residual(const InvariantForm& big_omega, const HermitianStructure& h);

struct SystemParams {
  InvariantForm f0, f1;
  Scalar alpha;
  InvariantForm big_omega;
  HermitianPtr h;
};

struct HsResiduals {
  InvariantForm hym0;      // F_0 ∧ ω^{n−1}
  InvariantForm hym1;      // F_1 ∧ ω^{n−1}
  /// d(ω^{n−1}); equals d(‖Ω‖_ω ω^{n−1}) up to the constant positive factor
  /// ‖Ω‖_ω, which is irrational in general.
  InvariantForm balanced;
  InvariantForm bianchi;   // dd^cω − α F_0∧F_0 + α F_1∧F_1

  bool all_zero() const { return hym0.is_zero() && hym1.is_zero() && balanced.is_zero() && bianchi.is_zero(); }
};

HsResiduals hs_residuals(const SystemParams& s);

/// ω^k.
InvariantForm omega_power(const HermitianStructure& h, int k);

}  // namespace hslab
