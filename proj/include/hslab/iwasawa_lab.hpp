#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hslab/harmonic_higgs.hpp"
#include "hslab/report.hpp"

namespace hslab {

struct SU3Data {
  const NilmanifoldModel* model = nullptr;
  InvariantForm omega0;
  InvariantForm big_omega;
};

/// The Iwasawa model with ω_0 = (i/2)Σ ω_{jj̄} and Ω = ω_{123}.
SU3Data build_iwasawa();

/// τ = Σ t_i τ_i.
struct TauDeformation {
  std::array<Rational, 4> t{};

  InvariantForm form() const;
  bool is_zero() const;
  /// |t_i| ≤ 1/2 and ω_0 + τ positive.
  bool admissible() const;
};

/// (0,1)-forms a_j = c_{j,1} ω_{1̄} + c_{j,2} ω_{2̄} twisting V_j.
struct PicardPoint {
  std::array<GaussRational, 4> c{};

  InvariantForm form(int j) const;
};

struct FamilyConfig {
  LineBundleTriple t0, t1;
  TauDeformation tau;
  PicardPoint picard;
  /// Solved from the Bianchi identity when empty.
  std::optional<Scalar> alpha;
};

struct SolutionCandidate {
  FamilyConfig config;
  SystemParams params;
};

/// Throws DegenerateCoupling when α must be solved and Σ_0 = Σ_1, and
/// std::invalid_argument for a zero triple, an inadmissible τ or an explicit
/// α that is zero or not real.
SolutionCandidate make_family(const FamilyConfig& cfg);

struct VerifyOptions {
  bool timings = false;
};

VerificationReport verify_family(const SolutionCandidate& c, const VerifyOptions& opts = {});

/// "m0,n0,p0|m1,n1,p1" plus ";tau=..." and ";picard=..." when nonzero.
std::string family_id(const FamilyConfig& cfg);

struct SweepOptions {
  int max_abs = 1;
  bool require_harmonic = false;
  bool require_ch2 = false;
  /// Keep one representative of each pair up to a simultaneous sign flip.
  bool canonical = true;
  int threads = 1;
  bool timings = false;
};

struct CatalogEntry {
  LineBundleTriple t0, t1;
  Scalar alpha;
  bool hs_solution = false;
  bool hermitian_einstein = false;
  bool harmonic = false;
  bool harmonic_criterion = false;
  bool harmonic_closed_form = false;
  bool integer_orthogonal = false;
  bool gamma_nonzero = false;
  bool dbar_phi_23_nonzero = false;
  bool dbar_phi_23_matches = false;
  bool slope_cotangent_zero = false;
  bool degrees_zero = false;
  std::optional<double> elapsed_ms;

  /// One JSON object on a single line.
  std::string to_json_line() const;
};

struct Catalog {
  std::vector<CatalogEntry> entries;
  /// Pairs enumerated before filtering, excluding zero triples.
  long enumerated = 0;
  long degenerate = 0;
  long filtered_out = 0;

  std::string to_json_lines() const;
};

/// Enumerates pairs of nonzero triples with entries in [−max_abs, max_abs] in
/// lexicographic order, skipping degenerate couplings, and verifies each
/// surviving family at ω_0. Output order is independent of the thread count.
Catalog sweep(const SweepOptions& opts);

/// −4π²α((m_0m_1 + z_0 z̄_1)ω_{11̄} + (m_0 z_1 − m_1 z_0)ω_{12̄} + (m_1 z̄_0 − m_0 z̄_1)ω_{21̄}
/// + (m_0m_1 + z̄_0 z_1)ω_{22̄}) with z_j = n_j + ip_j.
InvariantForm dbar_phi_closed_form(const LineBundleTriple& a, const LineBundleTriple& b, const Scalar& alpha);

}  // namespace hslab
