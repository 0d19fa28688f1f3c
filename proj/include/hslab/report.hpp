#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hslab/bundle.hpp"

namespace hslab {

struct ResidualEntry {
  std::string name;
  bool zero = false;
  /// Form literal of the residual, or of its first nonzero entry prefixed
  /// by "[i,j] " for operator residuals; empty when zero.
  std::optional<std::string> witness;

  friend bool operator==(const ResidualEntry&, const ResidualEntry&) = default;
};

/// Outcome of verifying one Iwasawa family. Exact scalars only; float
/// renderings are added on output and ignored on input.
struct VerificationReport {
  std::string family_id;
  LineBundleTriple t0, t1;
  std::array<Rational, 4> tau{};
  std::array<GaussRational, 4> picard{};

  Scalar alpha;
  std::vector<ResidualEntry> residuals;
  bool hs_solution = false;
  bool hermitian_einstein = false;
  bool harmonic = false;
  /// F ∧ *d^cω = 0 and ⟨F_1, F_0⟩ = 0 for the line bundle carrying Ψ.
  bool harmonic_criterion = false;
  bool integer_orthogonal = false;
  bool gamma_nonzero = false;
  bool higgs_nonholomorphic = false;
  /// (∂̄_Qφ) between End V_0 and End V_1.
  std::string dbar_phi_23;
  Scalar slope_cotangent;
  Scalar degree_l0, degree_l1;
  std::optional<double> elapsed_ms;

  const ResidualEntry* find(std::string_view name) const;
  /// Equality of everything except the parameter echo and timing.
  bool same_results(const VerificationReport& o) const;

  std::string to_json() const;
  /// Throws std::invalid_argument on malformed input.
  static VerificationReport from_json(std::string_view text);
  std::string summary() const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

}  // namespace hslab
