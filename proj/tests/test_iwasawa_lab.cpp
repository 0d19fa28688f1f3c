#include <doctest.h>

#include <random>

#include "hslab/iwasawa.hpp"
#include "hslab/iwasawa_lab.hpp"

#include <json.hpp>

using namespace hslab;

namespace {

Scalar pi_pow(int k) { return Scalar(GaussRational(1), k); }

FamilyConfig config(LineBundleTriple a, LineBundleTriple b) {
  FamilyConfig c;
  c.t0 = a;
  c.t1 = b;
  return c;
}

VerificationReport verify(const FamilyConfig& c) { return verify_family(make_family(c)); }

bool nonzero_entries_only(const VerificationReport& r, std::initializer_list<const char*> names) {
  for (const auto& e : r.residuals) {
    bool listed = false;
    for (const char* n : names) listed |= e.name == n;
    if (e.zero == listed) return false;
    if (!e.zero && !e.witness) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("iwasawa data") {
  SU3Data su3 = build_iwasawa();
  const NilmanifoldModel* m = su3.model;
  CHECK(d(InvariantForm::generator(m, 2)) == wedge(InvariantForm::generator(m, 0), InvariantForm::generator(m, 1)));
  CHECK(HermitianStructure::create(su3.omega0)->is_positive());
  CHECK(su3.big_omega == iwasawa::holomorphic_volume());
  CHECK(d(su3.big_omega).is_zero());
}

TEST_CASE("tau deformations") {
  TauDeformation t;
  CHECK(t.is_zero());
  CHECK(t.admissible());
  CHECK(t.form().is_zero());
  t.t = {Rational(1, 4), Rational(-1, 10), Rational(0), Rational(1, 10)};
  CHECK_FALSE(t.is_zero());
  CHECK(t.admissible());
  CHECK(t.form() == iwasawa::tau_basis()[0] * Scalar(Rational(1, 4)) + iwasawa::tau_basis()[1] * Scalar(Rational(-1, 10)) +
                        iwasawa::tau_basis()[3] * Scalar(Rational(1, 10)));
  t.t[0] = Rational(3, 5);
  CHECK_FALSE(t.admissible());
  // ω_0 + τ degenerates at the corner of the box
  t.t = {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  CHECK_FALSE(t.admissible());
}

TEST_CASE("family construction") {
  auto c = make_family(config({1, 2, 2}, {2, -1, 0}));
  CHECK(c.params.alpha == Scalar(Rational(1, 8)) * pi_pow(-2));
  CHECK(make_family(config({2, -1, 0}, {1, 2, 2})).params.alpha == Scalar(Rational(-1, 8)) * pi_pow(-2));

  CHECK_THROWS_AS(make_family(config({0, 0, 0}, {1, 0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(make_family(config({1, 2, 2}, {2, 2, 1})), DegenerateCoupling);
  CHECK_THROWS_AS(make_family(config({1, 0, 0}, {0, 1, 0})), DegenerateCoupling);

  FamilyConfig bad = config({1, 0, 0}, {1, 1, 0});
  bad.alpha = Scalar();
  CHECK_THROWS_AS(make_family(bad), std::invalid_argument);
  bad.alpha = Scalar::I();
  CHECK_THROWS_AS(make_family(bad), std::invalid_argument);
  bad.alpha = Scalar(1) + pi_pow(-2);
  CHECK_THROWS_AS(make_family(bad), std::invalid_argument);
  bad.alpha.reset();
  bad.tau.t[2] = Rational(2);
  CHECK_THROWS_AS(make_family(bad), std::invalid_argument);

  CHECK(family_id(config({1, 2, 2}, {2, -1, 0})) == "1,2,2|2,-1,0");
  FamilyConfig twisted = config({1, 2, 2}, {2, -1, 0});
  twisted.tau.t[1] = Rational(1, 4);
  twisted.picard.c[3] = GaussRational(Rational(1), Rational(-2));
  CHECK(family_id(twisted) == "1,2,2|2,-1,0;tau=0,1/4,0,0;picard=0,0,0,1 - 2 i");
}

TEST_CASE("verification of a harmonic family") {
  auto r = verify(config({1, 2, 2}, {2, -1, 0}));
  CHECK(r.alpha == Scalar(Rational(1, 8)) * pi_pow(-2));
  CHECK(nonzero_entries_only(r, {}));
  CHECK(r.hs_solution);
  CHECK(r.hermitian_einstein);
  CHECK(r.harmonic);
  CHECK(r.harmonic_criterion);
  CHECK(r.integer_orthogonal);
  CHECK(r.gamma_nonzero);
  CHECK(r.higgs_nonholomorphic);
  CHECK(r.dbar_phi_23 == "(i) w1^w1b + (-5/2 + 2 i) w2^w1b + (5/2 + 2 i) w1^w2b + (-i) w2^w2b");
  CHECK(r.dbar_phi_23 == dbar_phi_closed_form({1, 2, 2}, {2, -1, 0}, r.alpha).to_string());
  CHECK(r.slope_cotangent.is_zero());
  CHECK(r.degree_l0.is_zero());
  CHECK(r.degree_l1.is_zero());
  CHECK_FALSE(r.elapsed_ms);
  CHECK(verify_family(make_family(config({1, 2, 2}, {2, -1, 0})), {true}).elapsed_ms);
}

TEST_CASE("verification of non-harmonic and perturbed families") {
  auto r = verify(config({1, 0, 0}, {1, 1, 0}));
  CHECK(r.hs_solution);
  CHECK(r.hermitian_einstein);
  CHECK_FALSE(r.harmonic);
  CHECK_FALSE(r.harmonic_criterion);
  CHECK_FALSE(r.integer_orthogonal);
  CHECK(nonzero_entries_only(r, {"harmonic_K", "harmonic_closed_form", "curvature_pairing"}));
  CHECK(r.find("harmonic_K")->witness->rfind("[", 0) == 0);

  FamilyConfig c = config({1, 0, 0}, {1, 1, 0});
  c.alpha = make_family(c).params.alpha + Scalar(Rational(1, 3)) * pi_pow(-2);
  auto p = verify(c);
  CHECK_FALSE(p.hs_solution);
  CHECK(p.find("bianchi")->witness);
  CHECK(p.find("hym0")->zero);
  CHECK(p.find("hym1")->zero);
  CHECK(p.find("balanced")->zero);
  CHECK_FALSE(p.hermitian_einstein);
  CHECK(p.find("hermitian_einstein_G")->witness);

  CHECK(verify(config({1, 2, 2}, {2, -1, 0})).find("hermitian_einstein_G")->witness == std::nullopt);
}

TEST_CASE("negative coupling swaps the roles of the line bundles") {
  auto r = verify(config({2, -1, 0}, {1, 2, 2}));
  CHECK(r.hs_solution);
  CHECK(r.hermitian_einstein);
  CHECK(r.harmonic);
  CHECK(r.dbar_phi_23 == dbar_phi_closed_form({1, 2, 2}, {2, -1, 0}, -r.alpha).to_string());
  auto n = verify(config({1, 1, 0}, {1, 0, 0}));
  CHECK_FALSE(n.harmonic);
  CHECK_FALSE(n.harmonic_criterion);
}

TEST_CASE("an explicit zero deformation reproduces the undeformed report") {
  FamilyConfig c = config({1, 2, 2}, {2, -1, 0});
  c.tau.t = {Rational(0), Rational(0, 3), Rational(0), Rational(0)};
  CHECK(verify(c) == verify(config({1, 2, 2}, {2, -1, 0})));
  CHECK(verify(c).to_json() == verify(config({1, 2, 2}, {2, -1, 0})).to_json());
}

TEST_CASE("tau-deformed families") {
  for (int i = 0; i < 4; ++i)
    for (Rational t : {Rational(1, 10), Rational(-1, 4)}) {
      FamilyConfig c = config({0, 1, 2}, {0, 2, 0});
      c.tau.t[i] = t;
      auto r = verify(c);
      CHECK(r.hs_solution);
      CHECK(r.hermitian_einstein);
      CHECK(r.harmonic == r.harmonic_criterion);
      CHECK(r.slope_cotangent.is_zero());
      CHECK(r.degree_l0.is_zero());

      c.t0 = {1, 2, 2};
      c.t1 = {2, -1, 0};
      auto m = verify(c);
      CHECK_FALSE(m.find("hym0")->zero);
      CHECK(m.find("bianchi")->zero);
      CHECK(m.find("balanced")->zero);
    }
  FamilyConfig mixed = config({0, 1, 2}, {0, 2, 0});
  mixed.tau.t = {Rational(1, 10), Rational(0), Rational(-1, 4), Rational(0)};
  CHECK_FALSE(verify(mixed).hs_solution);
}

TEST_CASE("picard twists leave every result unchanged") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(-3, 3);
  for (auto [a, b] : {std::pair<LineBundleTriple, LineBundleTriple>{{1, 2, 2}, {2, -1, 0}},
                      {{1, 0, 0}, {1, 1, 0}}, {{2, -1, 0}, {0, 1, 1}}}) {
    FamilyConfig base = config(a, b);
    auto r0 = verify(base);
    for (int k = 0; k < 5; ++k) {
      FamilyConfig c = base;
      for (auto& x : c.picard.c) x = GaussRational(Rational(v(rng), 2), Rational(v(rng), 3));
      auto r = verify(c);
      CHECK(r.same_results(r0));
      CHECK(r.picard == c.picard.c);
      CHECK(r.family_id != r0.family_id);
    }
  }
}

TEST_CASE("report json round trip") {
  auto r = verify_family(make_family(config({1, 0, 0}, {1, 1, 0})), {true});
  auto back = VerificationReport::from_json(r.to_json());
  CHECK(back == r);

  FamilyConfig c = config({1, 2, 2}, {2, -1, 0});
  c.tau.t = {Rational(1, 4), Rational(0), Rational(0), Rational(0)};
  c.picard.c[1] = GaussRational(Rational(1, 2), Rational(-3));
  c.alpha = Scalar(Rational(1, 3)) * pi_pow(-2);
  auto t = verify(c);
  CHECK(VerificationReport::from_json(t.to_json()) == t);

  auto j = nlohmann::json::parse(t.to_json());
  j["alpha"]["display"] = {0.0, 5.0};
  CHECK(VerificationReport::from_json(j.dump()) == t);

  CHECK_THROWS_AS(VerificationReport::from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(VerificationReport::from_json("{}"), std::invalid_argument);
  j["params"]["picard"][0] = "pi";
  CHECK_THROWS_AS(VerificationReport::from_json(j.dump()), std::invalid_argument);

  auto text = t.summary();
  CHECK(text.find("bianchi: nonzero") != std::string::npos);
  CHECK(text.find("alpha = (1/3) pi^-2") != std::string::npos);
}

TEST_CASE("sweep") {
  Catalog c = sweep({1});
  CHECK(c.enumerated == 13 * 26);
  CHECK(c.degenerate > 0);
  CHECK(static_cast<long>(c.entries.size()) == c.enumerated - c.degenerate);
  CHECK(c.entries.front().t0 == LineBundleTriple{0, 0, 1});
  CHECK(c.entries.front().t1 == LineBundleTriple{-1, -1, -1});
  long harmonic = 0;
  for (const auto& e : c.entries) {
    CHECK(e.hs_solution);
    CHECK(e.hermitian_einstein);
    CHECK(e.harmonic == e.integer_orthogonal);
    CHECK(e.harmonic == e.harmonic_criterion);
    CHECK(e.harmonic == e.harmonic_closed_form);
    CHECK(e.dbar_phi_23_nonzero);
    CHECK(e.dbar_phi_23_matches);
    CHECK(e.slope_cotangent_zero);
    CHECK(e.degrees_zero);
    CHECK(e.gamma_nonzero);
    CHECK_FALSE(e.elapsed_ms);
    harmonic += e.harmonic;
  }

  SweepOptions h{1};
  h.require_harmonic = true;
  Catalog ch = sweep(h);
  CHECK(static_cast<long>(ch.entries.size()) == harmonic);
  CHECK(ch.enumerated == c.enumerated);

  SweepOptions all{1};
  all.canonical = false;
  CHECK(sweep(all).entries.size() == 2 * c.entries.size());

  SweepOptions ch2{1};
  ch2.require_ch2 = true;
  Catalog cc = sweep(ch2);
  CHECK(static_cast<long>(cc.entries.size()) + cc.filtered_out == static_cast<long>(c.entries.size()));

  SweepOptions par{1};
  par.threads = 3;
  CHECK(sweep(par).to_json_lines() == c.to_json_lines());

  CHECK(sweep({0}).entries.empty());
}

TEST_CASE("catalog lines") {
  CatalogEntry e;
  e.t0 = {1, 2, 2};
  e.t1 = {2, -1, 0};
  e.alpha = Scalar(Rational(1, 8)) * pi_pow(-2);
  e.harmonic = true;
  auto j = nlohmann::json::parse(e.to_json_line());
  CHECK(e.to_json_line().find('\n') == std::string::npos);
  CHECK(j["params"]["t1"] == nlohmann::json::array({2, -1, 0}));
  CHECK(j["alpha"] == "(1/8) pi^-2");
  CHECK(j["harmonic"] == true);
  CHECK_FALSE(j.contains("timings"));
  e.elapsed_ms = 1.5;
  CHECK(nlohmann::json::parse(e.to_json_line())["timings"]["elapsed_ms"] == 1.5);
}
