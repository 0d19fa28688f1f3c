#include "hslab/report.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hslab {

namespace {

using nlohmann::ordered_json;

ordered_json triple_json(const LineBundleTriple& t) { return ordered_json::array({t.m, t.n, t.p}); }

LineBundleTriple triple_from(const nlohmann::json& j, LineBundleTriple::Role role) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("report: triple must have three entries");
  return {j[0].get<int64_t>(), j[1].get<int64_t>(), j[2].get<int64_t>(), role};
}

ordered_json scalar_json(const Scalar& s) {
  auto z = s.to_complex();
  return {{"exact", s.to_string()}, {"display", {z.real(), z.imag()}}};
}

Scalar scalar_from(const nlohmann::json& j) { return Scalar::parse(j.at("exact").get<std::string>()); }

GaussRational gauss_from(const std::string& text) {
  Scalar s = Scalar::parse(text);
  GaussRational g = s.coeff(0);
  if (Scalar(g) != s) throw std::invalid_argument("report: expected a Gaussian rational: " + text);
  return g;
}

}  // namespace

const ResidualEntry* VerificationReport::find(std::string_view name) const {
  for (const auto& r : residuals)
    if (r.name == name) return &r;
  return nullptr;
}

bool VerificationReport::same_results(const VerificationReport& o) const {
  return alpha == o.alpha && residuals == o.residuals && hs_solution == o.hs_solution &&
         hermitian_einstein == o.hermitian_einstein && harmonic == o.harmonic &&
         harmonic_criterion == o.harmonic_criterion && integer_orthogonal == o.integer_orthogonal &&
         gamma_nonzero == o.gamma_nonzero && higgs_nonholomorphic == o.higgs_nonholomorphic &&
         dbar_phi_23 == o.dbar_phi_23 && slope_cotangent == o.slope_cotangent && degree_l0 == o.degree_l0 &&
         degree_l1 == o.degree_l1;
}

std::string VerificationReport::to_json() const {
  ordered_json j;
  j["family_id"] = family_id;
  ordered_json params;
  params["t0"] = triple_json(t0);
  params["t1"] = triple_json(t1);
  params["tau"] = ordered_json::array();
  for (const auto& t : tau) params["tau"].push_back(t.to_string());
  params["picard"] = ordered_json::array();
  for (const auto& c : picard) params["picard"].push_back(c.to_string());
  j["params"] = params;
  j["alpha"] = scalar_json(alpha);
  j["residuals"] = ordered_json::array();
  for (const auto& r : residuals) {
    ordered_json e{{"name", r.name}, {"zero", r.zero}};
    if (r.witness) e["witness"] = *r.witness;
    j["residuals"].push_back(e);
  }
  j["verdicts"] = {{"hs_solution", hs_solution},
                   {"hermitian_einstein", hermitian_einstein},
                   {"harmonic", harmonic},
                   {"harmonic_criterion", harmonic_criterion},
                   {"integer_orthogonal", integer_orthogonal},
                   {"gamma_nonzero", gamma_nonzero},
                   {"higgs_nonholomorphic", higgs_nonholomorphic}};
  j["dbar_phi_23"] = dbar_phi_23;
  j["slope_cotangent"] = scalar_json(slope_cotangent);
  j["degree_l0"] = scalar_json(degree_l0);
  j["degree_l1"] = scalar_json(degree_l1);
  if (elapsed_ms) j["timings"] = {{"elapsed_ms", *elapsed_ms}};
  return j.dump(2);
}

VerificationReport VerificationReport::from_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    VerificationReport r;
    r.family_id = j.at("family_id").get<std::string>();
    const auto& p = j.at("params");
    r.t0 = triple_from(p.at("t0"), LineBundleTriple::Role::V0);
    r.t1 = triple_from(p.at("t1"), LineBundleTriple::Role::V1);
    const auto& tau = p.at("tau");
    const auto& pic = p.at("picard");
    if (tau.size() != 4 || pic.size() != 4) throw std::invalid_argument("report: tau and picard need four entries");
    for (int i = 0; i < 4; ++i) {
      r.tau[i] = Rational::parse(tau[i].get<std::string>());
      r.picard[i] = gauss_from(pic[i].get<std::string>());
    }
    r.alpha = scalar_from(j.at("alpha"));
    for (const auto& e : j.at("residuals")) {
      ResidualEntry re{e.at("name").get<std::string>(), e.at("zero").get<bool>(), std::nullopt};
      if (e.contains("witness")) re.witness = e["witness"].get<std::string>();
      r.residuals.push_back(std::move(re));
    }
    const auto& v = j.at("verdicts");
    r.hs_solution = v.at("hs_solution").get<bool>();
    r.hermitian_einstein = v.at("hermitian_einstein").get<bool>();
    r.harmonic = v.at("harmonic").get<bool>();
    r.harmonic_criterion = v.at("harmonic_criterion").get<bool>();
    r.integer_orthogonal = v.at("integer_orthogonal").get<bool>();
    r.gamma_nonzero = v.at("gamma_nonzero").get<bool>();
    r.higgs_nonholomorphic = v.at("higgs_nonholomorphic").get<bool>();
    r.dbar_phi_23 = j.at("dbar_phi_23").get<std::string>();
    r.slope_cotangent = scalar_from(j.at("slope_cotangent"));
    r.degree_l0 = scalar_from(j.at("degree_l0"));
    r.degree_l1 = scalar_from(j.at("degree_l1"));
    if (j.contains("timings")) r.elapsed_ms = j["timings"].at("elapsed_ms").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report: ") + e.what());
  }
}

std::string VerificationReport::summary() const {
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream os;
  os << "family " << family_id << "\n";
  os << "  alpha = " << alpha.to_string() << "\n";
  for (const auto& r : residuals) {
    os << "  " << r.name << ": " << (r.zero ? "0" : "nonzero");
    if (r.witness) os << "  " << *r.witness;
    os << "\n";
  }
  os << "  heterotic system solved: " << yes(hs_solution) << "\n";
  os << "  hermitian-einstein on Q: " << yes(hermitian_einstein) << "\n";
  os << "  harmonic: " << yes(harmonic) << " (criterion " << yes(harmonic_criterion) << ", orthogonal triples "
     << yes(integer_orthogonal) << ")\n";
  os << "  extension class nonzero: " << yes(gamma_nonzero) << "\n";
  os << "  higgs field non-holomorphic: " << yes(higgs_nonholomorphic) << "\n";
  os << "  dbar phi (End V0, End V1): " << dbar_phi_23 << "\n";
  os << "  slope of T*: " << slope_cotangent.to_string() << "\n";
  os << "  degrees: L0 " << degree_l0.to_string() << ", L1 " << degree_l1.to_string() << "\n";
  if (elapsed_ms) os << "  elapsed: " << *elapsed_ms << " ms\n";
  return os.str();
}

}  // namespace hslab
