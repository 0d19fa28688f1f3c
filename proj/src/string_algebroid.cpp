#include "hslab/string_algebroid.hpp"

#include <map>
#include <stdexcept>

namespace hslab {

namespace {

int rank_of(const HermitianStructure& h) { return h.dim() + 2; }

void require_holomorphic_frame(const NilmanifoldModel& m) {
  for (int j = 0; j < m.n(); ++j)
    if (!component(m.d_generator(j), 1, 1).is_zero() || !component(m.d_generator(j), 0, 2).is_zero())
      throw std::invalid_argument("dolbeault operator: the (1,0) coframe must be holomorphic");
}

void require_model(const SystemParams& s) {
  if (!s.h) throw std::invalid_argument("system parameters without a hermitian structure");
  const NilmanifoldModel* m = s.h->model();
  for (const auto* f : {&s.f0, &s.f1})
    if (f->model() && f->model() != m) throw std::invalid_argument("system parameters mix models");
}

Scalar pi_free(const Scalar& c) {
  if (c.is_zero()) return c;
  if (!c.is_monomial() || c.terms()[0].k != 0) throw std::invalid_argument("span must have pi-free coefficients");
  return c;
}

}  // namespace

SMat bismut_iso(const HermitianStructure& h) {
  const int n = h.n(), N = h.dim(), r = rank_of(h);
  SMat phi = SMat::Zero(r, r);
  for (int j = 0; j < n; ++j) phi(j, j) = Scalar(1);
  phi(N, n) = Scalar(1);
  phi(N + 1, n + 1) = Scalar(1);
  for (int k = 0; k < n; ++k)
    for (int c = 0; c < N; ++c)
      if (!h.g_inv()(c, k).is_zero()) phi(c, n + 2 + k) = Scalar(h.g_inv()(c, k) * GaussRational(Rational(-1, 2)));
  return phi;
}

SMat pairing_matrix(const HermitianStructure& h, const Scalar& alpha) {
  const int N = h.dim(), r = rank_of(h);
  SMat p = SMat::Zero(r, r);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (!h.g()(a, b).is_zero()) p(a, b) = -Scalar(h.g()(a, b));
  p(N, N) = -alpha;
  p(N + 1, N + 1) = alpha;
  return p;
}

Scalar pairing(const QSection& x, const QSection& y, const HermitianStructure& h, const Scalar& alpha) {
  SMat p = pairing_matrix(h, alpha);
  Scalar s;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (!p(i, j).is_zero()) s += x(i) * p(i, j) * y(j);
  return s;
}

QSection conjugate_section(const QSection& x, const HermitianStructure& h) {
  const int N = h.dim();
  if (x.size() != rank_of(h)) throw std::invalid_argument("section size mismatch");
  QSection out(x.size());
  for (int a = 0; a < N; ++a) out(h.model()->conj_index(a)) = x(a).conj();
  for (int j = N; j < x.size(); ++j) out(j) = -x(j).conj();
  return out;
}

QSection sigma(const QSection& x, const HermitianStructure& h) { return -conjugate_section(x, h); }

QOperator dolbeault_Q_holomorphic(const SystemParams& s) {
  require_model(s);
  const HermitianStructure& h = *s.h;
  const NilmanifoldModel* m = h.model();
  require_holomorphic_frame(*m);
  const int n = h.n(), r = rank_of(h);
  const int e0 = n, e1 = n + 1, xi = n + 2;
  InvariantForm f0 = component(s.f0.rebind(m), 1, 1), f1 = component(s.f1.rebind(m), 1, 1);
  InvariantForm del_omega = del(h.omega());

  QOperator b(m, r);
  std::vector<InvariantForm> beta(r, InvariantForm(m));
  for (int v = 0; v < n; ++v) {
    b(e0, v) = contract_basis(v, f0);
    b(e1, v) = contract_basis(v, f1);
    beta[v] = contract_basis(v, del_omega) * Scalar(GaussRational(Rational(0), Rational(-2)));
  }
  beta[e0] = f0 * (Scalar(-2) * s.alpha);
  beta[e1] = f1 * (Scalar(2) * s.alpha);
  for (int col = 0; col < r; ++col) {
    if (beta[col].is_zero()) continue;
    for (int k = 0; k < n; ++k) b(xi + k, col) = -contract_basis(k, beta[col]);
  }
  return b;
}

QOperator dolbeault_Q(const SystemParams& s) {
  SMat phi = bismut_iso(*s.h);
  return phi * dolbeault_Q_holomorphic(s) * hslab::inverse(phi);
}

std::vector<InvariantForm> dolbeault_Q(const QSection& x, const SystemParams& s) { return apply(dolbeault_Q(s), x); }

QOperator extension_class_gamma(const SystemParams& s) {
  QOperator b = dolbeault_Q_holomorphic(s);
  const int n = s.h->n(), r = b.rank();
  QOperator g(b.model(), r);
  for (int k = 0; k < n; ++k)
    for (int col = 0; col < n + 2; ++col) g(n + 2 + k, col) = b(n + 2 + k, col);
  return g;
}

QMetric metric_G(const HermitianStructure& h, const Scalar& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("metric G: alpha must be nonzero");
  return QMetric(hermitian_t_block(h), {-alpha, alpha});
}

QOperator connection_DG(const SystemParams& s) {
  require_model(s);
  const HermitianStructure& h = *s.h;
  const NilmanifoldModel* m = h.model();
  const int N = h.dim(), r = rank_of(h);
  const int e0 = N, e1 = N + 1;
  const auto& gamma = h.bismut();
  InvariantForm f0 = s.f0.rebind(m), f1 = s.f1.rebind(m);
  QOperator a(m, r);
  for (int b = 0; b < N; ++b)
    for (int c = 0; c < N; ++c) {
      InvariantForm::Terms terms;
      for (int k = 0; k < N; ++k)
        if (!gamma(k, b, c).is_zero()) terms.push_back({static_cast<Mask>(1u << k), gamma(k, b, c)});
      a(c, b) = InvariantForm::from_terms(m, std::move(terms));
    }
  for (int b = 0; b < N; ++b) {
    a(e0, b) = contract_basis(b, f0);
    a(e1, b) = contract_basis(b, f1);
  }
  // T-components of D(E_j): ±α g^{-1}(i_V F_j)
  for (int c = 0; c < N; ++c) {
    InvariantForm::Terms t0, t1;
    for (int k = 0; k < N; ++k) {
      Scalar x0, x1;
      for (int dd = 0; dd < N; ++dd) {
        if (h.g_inv()(c, dd).is_zero()) continue;
        Scalar gi(h.g_inv()(c, dd));
        x0 += gi * eval2(f0, k, dd);
        x1 += gi * eval2(f1, k, dd);
      }
      if (!x0.is_zero()) t0.push_back({static_cast<Mask>(1u << k), x0 * s.alpha});
      if (!x1.is_zero()) t1.push_back({static_cast<Mask>(1u << k), -(x1 * s.alpha)});
    }
    a(c, e0) = InvariantForm::from_terms(m, std::move(t0));
    a(c, e1) = InvariantForm::from_terms(m, std::move(t1));
  }
  return a;
}

QOperator he_residual_G(const SystemParams& s) {
  return wedge(curvature(connection_DG(s)), omega_power(*s.h, s.h->n() - 1));
}

QOperator pairing_skewness(const QOperator& a, const HermitianStructure& h, const Scalar& alpha) {
  SMat p = pairing_matrix(h, alpha);
  return transpose(a) * p + p * a;
}

std::vector<QSection> cotangent_span(const HermitianStructure& h) {
  SMat phi = bismut_iso(h);
  std::vector<QSection> out;
  for (int k = 0; k < h.n(); ++k) out.push_back(phi.col(h.n() + 2 + k));
  return out;
}

SubbundleVerdict check_invariant_subbundle(const std::vector<QSection>& span, const SystemParams& s,
                                           InvarianceMode mode, const InvariantForm& b) {
  require_model(s);
  const HermitianStructure& h = *s.h;
  const NilmanifoldModel* m = h.model();
  const int r = rank_of(h), k = static_cast<int>(span.size());
  if (k == 0) throw std::invalid_argument("subbundle: empty span");
  GMat basis(r, k);
  for (int j = 0; j < k; ++j) {
    if (span[j].size() != r) throw std::invalid_argument("subbundle: section size mismatch");
    for (int i = 0; i < r; ++i) basis(i, j) = pi_free(span[j](i)).coeff(0);
  }
  if (rank(basis) != k) throw std::invalid_argument("subbundle: span is linearly dependent");
  if (!b.is_zero() && (!d(b.rebind(m)).is_zero() || b.degree() != h.dim() - 2))
    throw std::invalid_argument("subbundle: slope class must be a closed (2n-2)-form");

  SubbundleVerdict v;
  v.isotropic = true;
  for (int i = 0; i < k && v.isotropic; ++i)
    for (int j = i; j < k; ++j)
      if (!pairing(span[i], span[j], h, s.alpha).is_zero()) {
        v.isotropic = false;
        break;
      }

  QOperator op = mode == InvarianceMode::Holomorphic ? dolbeault_Q(s) : connection_DG(s);
  SMat sb = basis.unaryExpr([](const GaussRational& q) { return Scalar(q); });
  v.invariant = true;
  for (Mask mask : op.support()) {
    SMat cols = sparse_product(op.coefficient(mask), sb);
    std::map<int, GMat> by_power;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < k; ++j)
        for (const auto& t : cols(i, j).terms()) {
          auto it = by_power.find(t.k);
          if (it == by_power.end()) it = by_power.emplace(t.k, GMat::Zero(r, k)).first;
          it->second(i, j) = t.q;
        }
    for (const auto& [p, vk] : by_power) {
      GMat aug(r, 2 * k);
      aug << basis, vk;
      if (rank(aug) != k) {
        v.invariant = false;
        break;
      }
    }
    if (!v.invariant) break;
  }
  v.c1 = InvariantForm(m);
  v.degree = Scalar();
  v.slope = Scalar();
  if (!v.invariant) return v;

  // left inverse of the basis from its pivot rows
  GMat bt = basis.transpose();
  std::vector<int> piv = [&] {
    GMat tmp = bt;
    return rref(tmp);
  }();
  GMat square(k, k);
  for (int j = 0; j < k; ++j) square.row(j) = basis.row(piv[j]);
  GMat sq_inv = hslab::inverse(square);
  GMat left = GMat::Zero(k, r);
  for (int j = 0; j < k; ++j) left.col(piv[j]) = sq_inv.col(j);

  InvariantForm trace(m);
  for (int i = 0; i < k; ++i)
    for (int row = 0; row < r; ++row) {
      if (left(i, row).is_zero()) continue;
      for (int col = 0; col < r; ++col)
        if (!basis(col, i).is_zero() && !op(row, col).is_zero())
          trace += op(row, col) * Scalar(left(i, row) * basis(col, i));
    }
  // holomorphic mode: Chern connection of a constant metric from its (0,1) part
  if (mode == InvarianceMode::Holomorphic) trace = trace - conjugate(trace);
  v.c1 = d(trace) * (Scalar::I() / (Scalar(2) * Scalar::pi()));
  if (!b.is_zero()) v.degree = integrate(wedge(v.c1, b.rebind(m)));
  v.slope = v.degree / Scalar(k);
  return v;
}

}  // namespace hslab
