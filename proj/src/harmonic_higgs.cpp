#include "hslab/harmonic_higgs.hpp"

#include <stdexcept>

namespace hslab {

namespace {

bool is_positive_real(const Scalar& s) { return s.is_real() && s.to_complex().real() > 0; }

void add_product(SMat& out, const SMat& x, const SMat& y, const Scalar& c) {
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k) {
      if (x(i, k).is_zero()) continue;
      const Scalar xc = x(i, k) * c;
      for (int j = 0; j < y.cols(); ++j)
        if (!y(k, j).is_zero()) out(i, j) += xc * y(k, j);
    }
}

SMat conj_entries(const SMat& m) {
  return m.unaryExpr([](const Scalar& s) { return s.conj(); });
}

}  // namespace

CompatibleMetricH CompatibleMetricH::block(HermitianPtr h, const Scalar& alpha) {
  if (!h) throw std::invalid_argument("compatible metric: no hermitian structure");
  if (!h->is_positive()) throw std::invalid_argument("compatible metric: omega is not positive");
  if (alpha.is_zero() || !alpha.is_real() || !alpha.is_monomial())
    throw std::invalid_argument("compatible metric: alpha must be a nonzero real monomial");
  Scalar a = is_positive_real(alpha) ? alpha : -alpha;
  QMetric m(hermitian_t_block(*h), {a, a});
  return make(std::move(h), alpha, std::move(m));
}

CompatibleMetricH CompatibleMetricH::make(HermitianPtr h, const Scalar& alpha, QMetric metric) {
  if (!h) throw std::invalid_argument("compatible metric: no hermitian structure");
  if (metric.rank() != h->dim() + 2) throw std::invalid_argument("compatible metric: rank mismatch");
  if (!metric.is_positive()) throw std::invalid_argument("compatible metric: H is not positive definite");
  CompatibleMetricH out(std::move(h), alpha, std::move(metric));
  SMat s = out.sigma_matrix();
  const int r = out.metric_.rank();
  if (sparse_product(s, conj_entries(s)) != SMat::Identity(r, r))
    throw std::invalid_argument("compatible metric: sigma is not an involution");
  SMat p = pairing_matrix(*out.h_, alpha);
  if (sparse_product(sparse_product(SMat(s.transpose()), p), s) != conj_entries(p))
    throw std::invalid_argument("compatible metric: sigma does not preserve the pairing");
  return out;
}

SMat CompatibleMetricH::sigma_matrix() const {
  return sparse_product(hslab::inverse(pairing_matrix(*h_, alpha_)), metric_.matrix());
}

Decomposition decompose_unitary(const QOperator& conn, const CompatibleMetricH& H) {
  if (!pairing_skewness(conn, H.hermitian(), H.alpha()).is_zero())
    throw std::invalid_argument("unitary decomposition: connection is not orthogonal");
  QOperator psi = (conn + adjoint(conn, H.metric())) * Scalar(Rational(1, 2));
  return {conn - psi, psi, Decomposition::Flavor::UnitaryPsi};
}

Decomposition decompose_chern(const QOperator& conn, const CompatibleMetricH& H) {
  for (int i = 0; i < conn.rank(); ++i)
    for (int j = 0; j < conn.rank(); ++j)
      if (!conn(i, j).is_zero() && conn(i, j).degree() != 1)
        throw std::invalid_argument("chern decomposition: connection entries must be 1-forms");
  QOperator a01 = component(conn, 0, 1);
  QOperator chern = a01 - adjoint(a01, H.metric());
  return {chern, conn - chern, Decomposition::Flavor::ChernPhi};
}

QOperator covariant_exterior(const QOperator& conn, const QOperator& psi) { return d(psi) + bracket(conn, psi); }

QOperator covariant_codifferential(const QOperator& conn, const QOperator& psi, const HermitianStructure& h) {
  const int N = h.dim(), r = psi.rank();
  const auto& lc = h.levi_civita();
  std::vector<SMat> b(N), p(N);
  for (int a = 0; a < N; ++a) {
    b[a] = conn.rank() ? conn.coefficient(static_cast<Mask>(1u << a)) : SMat::Zero(r, r);
    p[a] = psi.coefficient(static_cast<Mask>(1u << a));
  }
  SMat out = SMat::Zero(r, r);
  for (int a = 0; a < N; ++a)
    for (int bb = 0; bb < N; ++bb) {
      if (h.g_inv()(a, bb).is_zero()) continue;
      const Scalar w(h.g_inv()(a, bb));
      add_product(out, b[a], p[bb], -w);
      add_product(out, p[bb], b[a], w);
      for (int c = 0; c < N; ++c)
        if (!lc(a, bb, c).is_zero()) out += p[c] * (lc(a, bb, c) * w);
    }
  return QOperator::constant(psi.model(), out);
}

QOperator apply_J(const QOperator& a) {
  QOperator out(a.model(), a.rank());
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j)
      if (!a(i, j).is_zero()) out(i, j) = apply_J(a(i, j));
  return out;
}

InvariantVector apply_J(const InvariantVector& v) {
  InvariantVector out = v;
  const int n = v.dim() / 2;
  for (int j = 0; j < v.dim(); ++j) out[j] = v[j] * (j < n ? Scalar::I() : -Scalar::I());
  return out;
}

MomentResiduals moment_residuals(const Decomposition& dec, const HermitianStructure& h) {
  if (dec.flavor != Decomposition::Flavor::UnitaryPsi)
    throw std::invalid_argument("moment residuals need the unitary decomposition");
  const QOperator& nabla = dec.unitary;
  const QOperator& psi = dec.self_adjoint;
  InvariantVector theta = sharp(lee_form(h), h);
  MomentResiduals r;
  r.i = wedge(curvature(nabla) + bracket(psi, psi) * Scalar(Rational(1, 2)), omega_power(h, h.n() - 1));
  r.j = covariant_codifferential(nabla, apply_J(psi), h) - contract(apply_J(theta), psi);
  r.k = covariant_codifferential(nabla, psi, h) + contract(theta, psi);
  return r;
}

QOperator moment_residual_k(const Decomposition& dec, const HermitianStructure& h) {
  if (dec.flavor != Decomposition::Flavor::UnitaryPsi)
    throw std::invalid_argument("moment residuals need the unitary decomposition");
  return covariant_codifferential(dec.unitary, dec.self_adjoint, h) +
         contract(sharp(lee_form(h), h), dec.self_adjoint);
}

QOperator harmonic_residual(const SystemParams& s, const CompatibleMetricH& H) {
  const HermitianStructure& h = *s.h;
  const NilmanifoldModel* m = h.model();
  const int N = h.dim();
  const bool positive = is_positive_real(s.alpha);
  const int p = end_index(h, positive ? 0 : 1), q = end_index(h, positive ? 1 : 0);
  InvariantForm fp = (positive ? s.f0 : s.f1).rebind(m), fq = (positive ? s.f1 : s.f0).rebind(m);
  Scalar a = positive ? s.alpha : -s.alpha;
  if (H.alpha() != s.alpha) throw std::invalid_argument("harmonic residual: metric built for another alpha");

  InvariantVector theta = sharp(lee_form(h), h);
  InvariantForm u = codifferential(fp, h) + contract(theta, fp) + hodge_star(wedge(fp, hodge_star(dc(h.omega()), h)), h);
  QOperator lower(m, N + 2);
  for (int b = 0; b < N; ++b) lower(p, b) = -contract_basis(b, u);
  Scalar v = a * frame_contraction(fq, fp, h);
  if (!v.is_zero()) lower(q, p) = InvariantForm::constant(m, v);
  return lower - adjoint(lower, metric_G(h, s.alpha));
}

QOperator higgs_dbar(const SystemParams& s, const CompatibleMetricH& H) {
  Decomposition dec = decompose_chern(connection_DG(s), H);
  return component(covariant_exterior(dec.unitary, dec.self_adjoint), 1, 1);
}

HiggsResiduals higgs_equation_residuals(const Decomposition& dec, const CompatibleMetricH& H) {
  if (dec.flavor != Decomposition::Flavor::ChernPhi)
    throw std::invalid_argument("higgs residuals need the chern decomposition");
  const HermitianStructure& h = H.hermitian();
  const QOperator& chern = dec.unitary;
  const QOperator& phi = dec.self_adjoint;
  QOperator phi_star = adjoint(phi, H.metric());
  QOperator f = curvature(chern);
  QOperator d_phi = covariant_exterior(chern, phi);
  QOperator dbar_phi = component(d_phi, 1, 1);
  QOperator del_phi = component(d_phi, 2, 0);
  QOperator del_phi_star = component(covariant_exterior(chern, phi_star), 1, 1);
  InvariantForm w = omega_power(h, h.n() - 1);
  const Scalar half(Rational(1, 2));
  HiggsResiduals r;
  r.first = wedge(f + dbar_phi * half - del_phi_star * half, w);
  r.second = wedge(dbar_phi + del_phi_star, w);
  r.third = del_phi + bracket(phi, phi) * half;
  r.k = wedge(f + bracket(phi, phi_star) * half, w);
  r.dbar_phi_omega = wedge(dbar_phi, w);
  return r;
}

}  // namespace hslab
