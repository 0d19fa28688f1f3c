#include "hslab/iwasawa_lab.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hslab/iwasawa.hpp"

namespace hslab {

SU3Data build_iwasawa() { return {iwasawa::model(), iwasawa::omega0(), iwasawa::holomorphic_volume()}; }

InvariantForm TauDeformation::form() const {
  auto basis = iwasawa::tau_basis();
  InvariantForm out(iwasawa::model());
  for (int i = 0; i < 4; ++i)
    if (!t[i].is_zero()) out += basis[i] * Scalar(t[i]);
  return out;
}

bool TauDeformation::is_zero() const {
  for (const auto& x : t)
    if (!x.is_zero()) return false;
  return true;
}

bool TauDeformation::admissible() const {
  const Rational half(1, 2);
  for (const auto& x : t)
    if (x > half || x < -half) return false;
  try {
    return HermitianStructure::create(iwasawa::omega0() + form())->is_positive();
  } catch (const std::invalid_argument&) {
    return false;
  }
}

InvariantForm PicardPoint::form(int j) const {
  InvariantForm out(iwasawa::model());
  if (!c[2 * j].is_zero()) out += InvariantForm(iwasawa::model(), 0b001000, Scalar(c[2 * j]));
  if (!c[2 * j + 1].is_zero()) out += InvariantForm(iwasawa::model(), 0b010000, Scalar(c[2 * j + 1]));
  return out;
}

namespace {

bool positive(const Scalar& s) { return s.is_real() && s.to_complex().real() > 0; }

int64_t dot(const LineBundleTriple& a, const LineBundleTriple& b) { return a.m * b.m + a.n * b.n + a.p * b.p; }

HermitianPtr reference_structure() {
  static const HermitianPtr h = HermitianStructure::create(iwasawa::omega0());
  return h;
}

SolutionCandidate assemble(const FamilyConfig& cfg, HermitianPtr h) {
  if (cfg.t0.is_zero() || cfg.t1.is_zero()) throw std::invalid_argument("family: zero triple");
  const NilmanifoldModel* m = iwasawa::model();
  SystemParams s{curvature_from_triple(cfg.t0, m) + d(cfg.picard.form(0)),
                 curvature_from_triple(cfg.t1, m) + d(cfg.picard.form(1)), Scalar(), iwasawa::holomorphic_volume(),
                 std::move(h)};
  if (cfg.alpha) {
    if (cfg.alpha->is_zero() || !cfg.alpha->is_real() || !cfg.alpha->is_monomial())
      throw std::invalid_argument("family: explicit alpha must be a nonzero real monomial");
    s.alpha = *cfg.alpha;
  } else {
    s.alpha = alpha_solve(s.f0, s.f1, *s.h);
  }
  return {cfg, std::move(s)};
}

std::string triple_text(const LineBundleTriple& t) {
  return std::to_string(t.m) + "," + std::to_string(t.n) + "," + std::to_string(t.p);
}

ResidualEntry form_entry(std::string name, const InvariantForm& f) {
  ResidualEntry e{std::move(name), f.is_zero(), std::nullopt};
  if (!e.zero) e.witness = f.to_string();
  return e;
}

ResidualEntry operator_entry(std::string name, const QOperator& q) {
  ResidualEntry e{std::move(name), q.is_zero(), std::nullopt};
  for (int i = 0; i < q.rank() && !e.zero && !e.witness; ++i)
    for (int j = 0; j < q.rank(); ++j)
      if (!q(i, j).is_zero()) {
        e.witness = "[" + std::to_string(i) + "," + std::to_string(j) + "] " + q(i, j).to_string();
        break;
      }
  return e;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SolutionCandidate make_family(const FamilyConfig& cfg) {
  if (!cfg.tau.admissible()) throw std::invalid_argument("family: tau deformation is not admissible");
  HermitianPtr h = cfg.tau.is_zero() ? reference_structure()
                                     : HermitianStructure::create(iwasawa::omega0() + cfg.tau.form());
  return assemble(cfg, std::move(h));
}

std::string family_id(const FamilyConfig& cfg) {
  std::string id = triple_text(cfg.t0) + "|" + triple_text(cfg.t1);
  if (!cfg.tau.is_zero()) {
    id += ";tau=";
    for (int i = 0; i < 4; ++i) id += (i ? "," : "") + cfg.tau.t[i].to_string();
  }
  bool twisted = false;
  for (const auto& c : cfg.picard.c) twisted |= !c.is_zero();
  if (twisted) {
    id += ";picard=";
    for (int i = 0; i < 4; ++i) id += (i ? "," : "") + cfg.picard.c[i].to_string();
  }
  return id;
}

InvariantForm dbar_phi_closed_form(const LineBundleTriple& a, const LineBundleTriple& b, const Scalar& alpha) {
  const GaussRational m0{Rational(a.m)}, m1{Rational(b.m)};
  const GaussRational z0(Rational(a.n), Rational(a.p)), z1(Rational(b.n), Rational(b.p));
  const Scalar k = Scalar(-4) * Scalar(GaussRational(1), 2) * alpha;
  const NilmanifoldModel* m = iwasawa::model();
  InvariantForm out(m);
  out += InvariantForm(m, 0b001001, k * Scalar(m0 * m1 + z0 * z1.conj()));
  out += InvariantForm(m, 0b010001, k * Scalar(m0 * z1 - m1 * z0));
  out += InvariantForm(m, 0b001010, k * Scalar(m1 * z0.conj() - m0 * z1.conj()));
  out += InvariantForm(m, 0b010010, k * Scalar(m0 * m1 + z0.conj() * z1));
  return out;
}

VerificationReport verify_family(const SolutionCandidate& c, const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const SystemParams& s = c.params;
  const HermitianStructure& h = *s.h;
  VerificationReport r;
  r.family_id = family_id(c.config);
  r.t0 = c.config.t0;
  r.t1 = c.config.t1;
  r.t0.role = LineBundleTriple::Role::V0;
  r.t1.role = LineBundleTriple::Role::V1;
  r.tau = c.config.tau.t;
  r.picard = c.config.picard.c;
  r.alpha = s.alpha;

  auto hs = hs_residuals(s);
  r.residuals.push_back(form_entry("hym0", hs.hym0));
  r.residuals.push_back(form_entry("hym1", hs.hym1));
  r.residuals.push_back(form_entry("balanced", hs.balanced));
  r.residuals.push_back(form_entry("bianchi", hs.bianchi));
  r.hs_solution = hs.all_zero();

  const InvariantForm b0 = omega_power(h, h.n() - 1);
  const QOperator dg = connection_DG(s);
  QOperator he = wedge(curvature(dg), b0);
  r.residuals.push_back(operator_entry("hermitian_einstein_G", he));
  r.hermitian_einstein = he.is_zero();
  r.gamma_nonzero = !extension_class_gamma(s).is_zero();

  auto H = CompatibleMetricH::block(s.h, s.alpha);
  auto dec = decompose_unitary(dg, H);
  QOperator k = moment_residual_k(dec, h);
  r.residuals.push_back(operator_entry("harmonic_K", k));
  r.harmonic = k.is_zero();
  r.residuals.push_back(operator_entry("harmonic_closed_form", harmonic_residual(s, H)));

  const InvariantForm& carrier = positive(s.alpha) ? s.f0 : s.f1;
  InvariantForm torsion = wedge(carrier, hodge_star(dc(h.omega()), h));
  Scalar contraction = s.alpha * frame_contraction(s.f1, s.f0, h);
  r.residuals.push_back(form_entry("torsion_pairing", torsion));
  r.residuals.push_back(form_entry("curvature_pairing", InvariantForm::constant(h.model(), contraction)));
  r.harmonic_criterion = torsion.is_zero() && contraction.is_zero();
  r.integer_orthogonal = dot(c.config.t0, c.config.t1) == 0;

  Decomposition chern = decompose_chern(dg, H);
  QOperator db = component(covariant_exterior(chern.unitary, chern.self_adjoint), 1, 1);
  r.higgs_nonholomorphic = !db.is_zero();
  r.dbar_phi_23 = db(end_index(h, 0), end_index(h, 1)).to_string();

  r.slope_cotangent = check_invariant_subbundle(cotangent_span(h), s, InvarianceMode::Holomorphic, b0).slope;
  auto b = CohClass::make(b0, CohClass::Flavor::BottChern);
  r.degree_l0 = degree_and_slope(CohClass::make(c1_line(s.f0), CohClass::Flavor::DeRham), b, 1);
  r.degree_l1 = degree_and_slope(CohClass::make(c1_line(s.f1), CohClass::Flavor::DeRham), b, 1);
  if (opts.timings) r.elapsed_ms = since(start);
  return r;
}

std::string CatalogEntry::to_json_line() const {
  nlohmann::ordered_json j;
  j["params"] = {{"t0", {t0.m, t0.n, t0.p}}, {"t1", {t1.m, t1.n, t1.p}}};
  j["alpha"] = alpha.to_string();
  j["hs_solution"] = hs_solution;
  j["hermitian_einstein"] = hermitian_einstein;
  j["harmonic"] = harmonic;
  j["harmonic_criterion"] = harmonic_criterion;
  j["harmonic_closed_form"] = harmonic_closed_form;
  j["integer_orthogonal"] = integer_orthogonal;
  j["gamma_nonzero"] = gamma_nonzero;
  j["dbar_phi_23_nonzero"] = dbar_phi_23_nonzero;
  j["dbar_phi_23_matches"] = dbar_phi_23_matches;
  j["slope_cotangent_zero"] = slope_cotangent_zero;
  j["degrees_zero"] = degrees_zero;
  if (elapsed_ms) j["timings"] = {{"elapsed_ms", *elapsed_ms}};
  return j.dump();
}

std::string Catalog::to_json_lines() const {
  std::string out;
  for (const auto& e : entries) out += e.to_json_line() + "\n";
  return out;
}

Catalog sweep(const SweepOptions& opts) {
  Catalog cat;
  if (opts.max_abs < 1) return cat;
  const int r = opts.max_abs;
  std::vector<LineBundleTriple> triples;
  for (int m = -r; m <= r; ++m)
    for (int n = -r; n <= r; ++n)
      for (int p = -r; p <= r; ++p)
        if (m || n || p) triples.push_back({m, n, p});

  // first nonzero entry of t0 positive represents the pair up to sign
  auto canonical = [](const LineBundleTriple& t) { return t.m > 0 || (t.m == 0 && (t.n > 0 || (t.n == 0 && t.p > 0))); };
  std::vector<std::pair<LineBundleTriple, LineBundleTriple>> work;
  for (const auto& a : triples) {
    if (opts.canonical && !canonical(a)) continue;
    for (const auto& b : triples) {
      ++cat.enumerated;
      if (a.norm2() == b.norm2()) {
        ++cat.degenerate;
        continue;
      }
      if (opts.require_harmonic && dot(a, b) != 0) {
        ++cat.filtered_out;
        continue;
      }
      work.emplace_back(a, b);
    }
  }

  std::vector<std::optional<CatalogEntry>> results(work.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < work.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      const auto& [a, b] = work[i];
      FamilyConfig cfg;
      cfg.t0 = a;
      cfg.t1 = b;
      SolutionCandidate c = assemble(cfg, reference_structure());
      if (opts.require_ch2 && !ch2_constraint(c.params.f0, c.params.f1).holds) continue;
      VerificationReport rep = verify_family(c);
      CatalogEntry e;
      e.t0 = a;
      e.t1 = b;
      e.alpha = rep.alpha;
      e.hs_solution = rep.hs_solution;
      e.hermitian_einstein = rep.hermitian_einstein;
      e.harmonic = rep.harmonic;
      e.harmonic_criterion = rep.harmonic_criterion;
      e.harmonic_closed_form = rep.find("harmonic_closed_form")->zero;
      e.integer_orthogonal = rep.integer_orthogonal;
      e.gamma_nonzero = rep.gamma_nonzero;
      e.dbar_phi_23_nonzero = rep.dbar_phi_23 != "0";
      InvariantForm expected = positive(rep.alpha) ? dbar_phi_closed_form(a, b, rep.alpha)
                                                   : dbar_phi_closed_form(b, a, -rep.alpha);
      e.dbar_phi_23_matches = rep.dbar_phi_23 == expected.to_string();
      e.slope_cotangent_zero = rep.slope_cotangent.is_zero();
      e.degrees_zero = rep.degree_l0.is_zero() && rep.degree_l1.is_zero();
      if (opts.timings) e.elapsed_ms = since(start);
      results[i] = std::move(e);
    }
  };
  const int threads = std::max(1, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : results) {
    if (e)
      cat.entries.push_back(std::move(*e));
    else
      ++cat.filtered_out;
  }
  return cat;
}

}  // namespace hslab
