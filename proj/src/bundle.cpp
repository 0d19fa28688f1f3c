#include "hslab/bundle.hpp"

#include <cmath>
#include <map>

namespace hslab {

namespace {

bool is_type(const InvariantForm& f, int p, int q) {
  const NilmanifoldModel* m = f.model();
  for (const auto& t : f.terms())
    if (popcount(t.mask & m->holo_mask()) != p || popcount(t.mask & m->antiholo_mask()) != q) return false;
  return true;
}

}  // namespace

InvariantForm curvature_from_triple(const LineBundleTriple& t, const NilmanifoldModel* model) {
  if (t.is_zero()) throw std::invalid_argument("line bundle triple must be nonzero");
  if (!model || model->n() < 2) throw std::invalid_argument("curvature needs a model with at least two (1,0) generators");
  const int n = model->n();
  auto w = [&](int a, int b) { return InvariantForm(model, static_cast<Mask>((1u << a) | (1u << (n + b))), Scalar(1)); };
  const Scalar pi = Scalar::pi();
  const Scalar ipi = Scalar::I() * pi;
  return (w(0, 0) - w(1, 1)) * (pi * Scalar(t.m)) + (w(0, 1) + w(1, 0)) * (pi * Scalar(t.n)) +
         (w(0, 1) - w(1, 0)) * (ipi * Scalar(t.p));
}

InvariantForm omega_power(const HermitianStructure& h, int k) {
  InvariantForm r = InvariantForm::constant(h.model(), Scalar(1));
  for (int i = 0; i < k; ++i) r = wedge(r, h.omega());
  return r;
}

InvariantForm hym_residual(const InvariantForm& f, const HermitianStructure& h) {
  return wedge(f, omega_power(h, h.n() - 1));
}

CohClass CohClass::make(InvariantForm rep, Flavor flavor) {
  bool ok = flavor == Flavor::Aeppli ? d(dc(rep)).is_zero() : d(rep).is_zero();
  if (!ok) throw std::invalid_argument("cohomology class representative is not closed");
  return {std::move(rep), flavor};
}

Scalar degree_and_slope(const CohClass& c, const CohClass& b, int rank) {
  const NilmanifoldModel* m = c.rep.model() ? c.rep.model() : b.rep.model();
  if (rank <= 0) throw std::invalid_argument("slope: rank must be positive");
  if (!m) return Scalar();
  for (const auto& t : c.rep.terms())
    if (popcount(t.mask) != 2) throw std::invalid_argument("slope: first class must have degree 2");
  for (const auto& t : b.rep.terms())
    if (popcount(t.mask) != m->dim() - 2) throw std::invalid_argument("slope: second class must have degree 2n-2");
  return integrate(wedge(c.rep, b.rep)) / Scalar(rank);
}

InvariantForm c1_line(const InvariantForm& f) { return f * (Scalar::I() / (Scalar(2) * Scalar::pi())); }

InvariantForm ch2_line(const InvariantForm& f) {
  InvariantForm c1 = c1_line(f);
  return wedge(c1, c1) * Scalar(Rational(1, 2));
}

Ch2Result ch2_constraint(const InvariantForm& f0, const InvariantForm& f1) {
  for (const auto* f : {&f0, &f1})
    if (!is_type(*f, 1, 1) || !d(*f).is_zero())
      throw std::invalid_argument("ch2 constraint needs closed (1,1)-forms");
  const NilmanifoldModel* m = f0.model() ? f0.model() : f1.model();
  Ch2Result out;
  InvariantForm target = wedge(f0, f0) - wedge(f1, f1);
  if (target.is_zero()) {
    out.holds = true;
    out.witness = InvariantForm(m);
    return out;
  }
  const int n = m->n();
  std::vector<InvariantForm> basis;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      basis.emplace_back(m, static_cast<Mask>((1u << j) | (1u << (n + k))), Scalar(1));
  std::vector<InvariantForm> images;
  std::map<Mask, int> row_of;
  for (const auto& b : basis) {
    images.push_back(d(dc(b)));
    for (const auto& t : images.back().terms()) row_of.emplace(t.mask, 0);
  }
  for (const auto& t : target.terms()) row_of.emplace(t.mask, 0);
  int r = 0;
  for (auto& [mask, idx] : row_of) idx = r++;

  GMat a = GMat::Zero(r, static_cast<int>(basis.size()));
  for (size_t c = 0; c < images.size(); ++c)
    for (const auto& t : images[c].terms()) {
      if (!t.c.is_monomial() || t.c.terms()[0].k != 0)
        throw std::invalid_argument("ch2 constraint: model constants must be pi-free");
      a(row_of[t.mask], static_cast<int>(c)) = t.c.terms()[0].q;
    }
  std::map<int, GVec> by_power;
  for (const auto& t : target.terms())
    for (const auto& term : t.c.terms()) {
      auto it = by_power.find(term.k);
      if (it == by_power.end()) it = by_power.emplace(term.k, GVec::Zero(r)).first;
      it->second(row_of[t.mask]) = term.q;
    }
  InvariantForm witness(m);
  for (const auto& [k, rhs] : by_power) {
    auto x = solve<GaussRational>(a, rhs);
    if (!x) return out;
    for (int c = 0; c < x->size(); ++c)
      if (!(*x)(c).is_zero()) witness += basis[c] * Scalar((*x)(c), k);
  }
  out.holds = true;
  out.witness = witness;
  return out;
}

Scalar alpha_solve(const InvariantForm& f0, const InvariantForm& f1, const HermitianStructure& h) {
  InvariantForm x = d(dc(h.omega()));
  InvariantForm y = wedge(f0, f0) - wedge(f1, f1);
  if (y.is_zero()) throw DegenerateCoupling("degenerate coupling: tr F0^2 = tr F1^2, no alpha exists");
  const auto& lead = y.terms().front();
  if (!lead.c.is_monomial()) throw std::domain_error("alpha: coupling coefficient is not a monomial");
  Scalar alpha = x.coeff(lead.mask) / lead.c;
  if (x != y * alpha) throw std::domain_error("alpha: dd^c omega is not proportional to tr F0^2 - tr F1^2");
  return alpha;
}

Scalar omega_norm_squared(const InvariantForm& big_omega, const HermitianStructure& h) {
  if (big_omega.is_zero()) throw std::invalid_argument("omega norm: zero form");
  if (!is_type(big_omega, h.n(), 0)) throw std::invalid_argument("omega norm: form must be of type (n,0)");
  const int n = h.n();
  Scalar in2(1);
  for (int k = 0; k < (n * n) % 4; ++k) in2 *= Scalar::I();
  return in2 * top_coeff(wedge(big_omega, conjugate(big_omega))) / top_coeff(h.volume());
}

double omega_norm(const InvariantForm& big_omega, const HermitianStructure& h) {
  return std::sqrt(omega_norm_squared(big_omega, h).to_complex().real());
}

InvariantForm conformally_balanced_residual(const InvariantForm& big_omega, const HermitianStructure& h) {
  omega_norm_squared(big_omega, h);  // validates Ω; the norm is constant, so d^c log‖Ω‖ = 0
  return -codifferential(h.omega(), h);
}

HsResiduals hs_residuals(const SystemParams& s) {
  const HermitianStructure& h = *s.h;
  HsResiduals r;
  InvariantForm wn1 = omega_power(h, h.n() - 1);
  r.hym0 = wedge(s.f0, wn1);
  r.hym1 = wedge(s.f1, wn1);
  omega_norm_squared(s.big_omega, h);
  if (!d(s.big_omega).is_zero()) throw std::invalid_argument("holomorphic volume form must be closed");
  r.balanced = d(wn1);
  r.bianchi = d(dc(h.omega())) - (wedge(s.f0, s.f0) - wedge(s.f1, s.f1)) * s.alpha;
  return r;
}

}  // namespace hslab
