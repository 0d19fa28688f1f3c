#include "hslab/selftest.hpp"

#include <random>

#include "hslab/harmonic_higgs.hpp"
#include "hslab/iwasawa.hpp"

namespace hslab {

bool CalibrationReport::ok() const { return first_failure() == nullptr; }

const CalibrationCheck* CalibrationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.ok) return &c;
  return nullptr;
}

namespace {

Scalar pi_pow(int k) { return Scalar(GaussRational(1), k); }

LineBundleTriple random_triple(std::mt19937& rng) {
  std::uniform_int_distribution<int> v(-3, 3);
  LineBundleTriple t;
  do {
    t = {v(rng), v(rng), v(rng)};
  } while (t.is_zero());
  return t;
}

QOperator random_operator(const NilmanifoldModel* m, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 7), slot(0, m->dim() - 1), c(-3, 3);
  QOperator q(m, 8);
  for (int k = 0; k < 6; ++k)
    q(pick(rng), pick(rng)) += InvariantForm(m, static_cast<Mask>(1u << slot(rng)),
                                             Scalar(GaussRational(Rational(c(rng)), Rational(c(rng)))));
  return q;
}

}  // namespace

CalibrationReport run_calibration(const CalibrationFaults& faults) {
  const NilmanifoldModel* m = iwasawa::model();
  auto dc_ = [&](const InvariantForm& a) { return faults.flip_dc ? -dc(a) : dc(a); };
  auto star = [&](const InvariantForm& a, const HermitianStructure& h) {
    return faults.flip_star ? -hodge_star(a, h) : hodge_star(a, h);
  };
  auto star_op = [&](const QOperator& a, const HermitianStructure& h) {
    return faults.flip_star ? hodge_star(a, h) * Scalar(-1) : hodge_star(a, h);
  };
  const InvariantForm w0 = iwasawa::omega0();
  const HermitianPtr h0 = HermitianStructure::create(w0);
  CalibrationReport r;
  auto add = [&](std::string name, bool ok) { r.checks.push_back({std::move(name), ok}); };

  add("dω_3 = ω_12", d(InvariantForm::generator(m, 2)) ==
                          wedge(InvariantForm::generator(m, 0), InvariantForm::generator(m, 1)));
  add("dd^c ω_0", d(dc_(w0)) == iwasawa::omega_1212());
  const Scalar half_i(GaussRational(Rational(0), Rational(1, 2)));
  add("*d^c ω_0", star(dc_(w0), *h0) ==
                      (InvariantForm(m, 0b100011, Scalar(1)) - InvariantForm(m, 0b011100, Scalar(1))) * half_i);

  std::mt19937 rng(20240601);
  bool squares = true;
  for (int k = 0; k < 20; ++k) {
    LineBundleTriple t = random_triple(rng);
    InvariantForm f = curvature_from_triple(t, m);
    squares &= wedge(f, f) == iwasawa::omega_1212() * (Scalar(2 * t.norm2()) * pi_pow(2));
  }
  add("F(m,n,p)^2", squares);

  bool round_trip = true;
  std::vector<std::pair<LineBundleTriple, LineBundleTriple>> pairs;
  while (pairs.size() < 10) {
    LineBundleTriple a = random_triple(rng), b = random_triple(rng);
    if (a.norm2() != b.norm2()) pairs.emplace_back(a, b);
  }
  for (const auto& [a, b] : pairs) {
    SystemParams s{curvature_from_triple(a, m), curvature_from_triple(b, m), Scalar(), iwasawa::holomorphic_volume(),
                   h0};
    s.alpha = Scalar(Rational(1, 2 * (a.norm2() - b.norm2()))) * pi_pow(-2);
    // the coupling must solve the residuals with the Bianchi identity computed from the faulty d^c
    InvariantForm bianchi = d(dc_(w0)) - (wedge(s.f0, s.f0) - wedge(s.f1, s.f1)) * s.alpha;
    round_trip &= hs_residuals(s).all_zero() && bianchi.is_zero();
    SystemParams p = s;
    p.alpha = s.alpha + Scalar(Rational(1, 7));
    auto res = hs_residuals(p);
    round_trip &= res.hym0.is_zero() && res.hym1.is_zero() && res.balanced.is_zero() && !res.bianchi.is_zero();
  }
  add("alpha round trip", round_trip);

  bool splitting = true;
  for (const auto& [a, b] : pairs) {
    SystemParams s{curvature_from_triple(a, m), curvature_from_triple(b, m), Scalar(), iwasawa::holomorphic_volume(),
                   h0};
    s.alpha = alpha_solve(s.f0, s.f1, *h0);
    auto H = CompatibleMetricH::block(s.h, s.alpha);
    QOperator conn = connection_DG(s);
    auto u = decompose_unitary(conn, H);
    splitting &= curvature(conn) == curvature(u.unitary) + covariant_exterior(u.unitary, u.self_adjoint) +
                                        bracket(u.self_adjoint, u.self_adjoint) * Scalar(Rational(1, 2));
  }
  add("curvature splitting", splitting);

  bool twisted = true;
  {
    auto h = HermitianStructure::create(w0 + iwasawa::tau_basis()[2] * Scalar(Rational(1, 4)));
    InvariantVector theta = sharp(lee_form(*h), *h);
    for (int k = 0; k < 6; ++k) {
      QOperator conn = random_operator(m, rng), psi = random_operator(m, rng);
      QOperator lhs = covariant_codifferential(conn, apply_J(psi), *h);
      QOperator rhs = star_op(wedge(covariant_exterior(conn, psi), omega_power(*h, 2)), *h) * Scalar(Rational(1, 2)) +
                      contract(apply_J(theta), psi);
      twisted &= lhs == rhs;
    }
  }
  add("J-twisted codifferential", twisted);
  return r;
}

}  // namespace hslab
