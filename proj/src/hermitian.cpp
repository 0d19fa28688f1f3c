#include "hslab/hermitian.hpp"

#include <Eigen/Eigenvalues>

namespace hslab {

namespace {

GaussRational constant_coeff(const Scalar& s) {
  if (s.is_zero()) return {};
  if (!s.is_monomial() || s.terms()[0].k != 0)
    throw std::invalid_argument("hermitian: fundamental form coefficients must not involve pi");
  return s.terms()[0].q;
}

GMat submatrix(const GMat& m, Mask rows, Mask cols) {
  const int k = popcount(rows);
  GMat s(k, k);
  int r = 0;
  for (unsigned rr = rows; rr; rr &= rr - 1, ++r) {
    int c = 0;
    for (unsigned cc = cols; cc; cc &= cc - 1, ++c) s(r, c) = m(__builtin_ctz(rr), __builtin_ctz(cc));
  }
  return s;
}

Scalar to_scalar(const GaussRational& q) { return Scalar(q); }

}  // namespace

std::shared_ptr<const HermitianStructure> HermitianStructure::create(const InvariantForm& omega) {
  const NilmanifoldModel* m = omega.model();
  if (!m) throw std::invalid_argument("hermitian: fundamental form has no model");
  const int n = m->n(), N = m->dim();
  for (const auto& t : omega.terms())
    if (popcount(t.mask & m->holo_mask()) != 1 || popcount(t.mask & m->antiholo_mask()) != 1)
      throw std::invalid_argument("hermitian: fundamental form must be of type (1,1)");
  if (conjugate(omega) != omega) throw std::invalid_argument("hermitian: fundamental form must be real");

  std::shared_ptr<HermitianStructure> h(new HermitianStructure());
  h->model_ = m;
  h->omega_ = omega;
  h->h_ = GMat::Zero(n, n);
  const GaussRational minus_two_i(Rational(0), Rational(-2));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Mask mask = static_cast<Mask>((1u << j) | (1u << (n + k)));
      h->h_(j, k) = minus_two_i * constant_coeff(omega.coeff(mask));
    }
  h->g_ = GMat::Zero(N, N);
  const GaussRational half(Rational(1, 2));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      h->g_(j, n + k) = h->h_(j, k) * half;
      h->g_(n + k, j) = h->h_(j, k) * half;
    }
  try {
    h->g_inv_ = inverse(h->g_);
  } catch (const std::domain_error&) {
    throw std::invalid_argument("hermitian: degenerate Gram matrix");
  }

  h->positive_ = true;
  for (int k = 1; k <= n; ++k) {
    GaussRational det = determinant<GaussRational>(h->h_.topLeftCorner(k, k));
    if (!det.is_real()) throw std::invalid_argument("hermitian: Gram matrix is not Hermitian");
    h->minors_.push_back(det.re);
    if (det.re.sign() <= 0) h->positive_ = false;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_complex(h->h_));
  h->min_eig_ = eig.eigenvalues().minCoeff();

  InvariantForm power = InvariantForm::constant(m, Scalar(1));
  for (int k = 1; k <= n; ++k) power = wedge(power, omega) * Scalar(Rational(1, k));
  h->volume_ = power;
  const Scalar v = top_coeff(power);

  const Mask full = m->full_mask();
  h->star_table_.assign(size_t(full) + 1, InvariantForm(m));
  std::vector<std::vector<Mask>> by_degree(N + 1);
  for (unsigned mask = 0; mask <= full; ++mask) by_degree[popcount(mask)].push_back(static_cast<Mask>(mask));
  for (unsigned K = 0; K <= full; ++K) {
    InvariantForm::Terms terms;
    for (Mask I : by_degree[popcount(K)]) {
      GaussRational G = I == 0 ? GaussRational(1) : determinant<GaussRational>(submatrix(h->g_inv_, I, static_cast<Mask>(K)));
      if (G.is_zero()) continue;
      Mask Ic = static_cast<Mask>(full & ~I);
      Scalar c = v * to_scalar(G);
      if (wedge_sign(I, Ic) < 0) c = -c;
      terms.push_back({Ic, std::move(c)});
    }
    h->star_table_[K] = InvariantForm::from_terms(m, std::move(terms));
  }
  return h;
}

InvariantForm hodge_star(const InvariantForm& a, const HermitianStructure& h) {
  InvariantForm r(h.model());
  for (const auto& t : a.terms()) r += h.star_monomial(t.mask) * t.c;
  return r;
}

InvariantForm codifferential(const InvariantForm& a, const HermitianStructure& h) {
  return -hodge_star(d(hodge_star(a, h)), h);
}

InvariantForm lee_form(const HermitianStructure& h) { return apply_J(codifferential(h.omega(), h)); }

InvariantVector sharp(const InvariantForm& a, const HermitianStructure& h) {
  InvariantVector v(h.model());
  for (int i = 0; i < h.dim(); ++i) {
    Scalar s;
    for (int b = 0; b < h.dim(); ++b) {
      const GaussRational& gi = h.g_inv()(i, b);
      if (gi.is_zero()) continue;
      Scalar ab = a.coeff(static_cast<Mask>(1u << b));
      if (!ab.is_zero()) s += Scalar(gi) * ab;
    }
    v[i] = s;
  }
  return v;
}

InvariantForm flat(const InvariantVector& v, const HermitianStructure& h) {
  InvariantForm r(h.model());
  for (int b = 0; b < h.dim(); ++b) {
    Scalar s;
    for (int a = 0; a < h.dim(); ++a)
      if (!h.g()(b, a).is_zero() && !v[a].is_zero()) s += Scalar(h.g()(b, a)) * v[a];
    r += InvariantForm::generator(h.model(), b, s);
  }
  return r;
}

Scalar metric(const InvariantVector& x, const InvariantVector& y, const HermitianStructure& h) {
  Scalar s;
  for (int a = 0; a < h.dim(); ++a)
    for (int b = 0; b < h.dim(); ++b)
      if (!h.g()(a, b).is_zero() && !x[a].is_zero() && !y[b].is_zero()) s += x[a] * Scalar(h.g()(a, b)) * y[b];
  return s;
}

Scalar inner_product(const InvariantForm& a, const InvariantForm& b, const HermitianStructure& h) {
  return top_coeff(wedge(a, hodge_star(conjugate(b), h))) / top_coeff(h.volume());
}

Scalar frame_contraction(const InvariantForm& f, const InvariantForm& g, const HermitianStructure& h) {
  const int N = h.dim();
  SMat F = SMat::Zero(N, N), G = SMat::Zero(N, N), ginv(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      F(a, b) = eval2(f, a, b);
      G(a, b) = eval2(g, a, b);
      ginv(a, b) = Scalar(h.g_inv()(a, b));
    }
  SMat raised = sparse_product(sparse_product(SMat(ginv.transpose()), F), ginv);
  Scalar s;
  for (int c = 0; c < N; ++c)
    for (int e = 0; e < N; ++e)
      if (!raised(c, e).is_zero() && !G(c, e).is_zero()) s += raised(c, e) * G(c, e);
  return s;
}

Scalar eval3(const InvariantForm& a, int i, int j, int k) {
  if (i == j || j == k || i == k) return {};
  int sign = 1;
  int v[3] = {i, j, k};
  for (int x = 0; x < 3; ++x)
    for (int y = x + 1; y < 3; ++y)
      if (v[x] > v[y]) sign = -sign;
  Scalar c = a.coeff(static_cast<Mask>((1u << i) | (1u << j) | (1u << k)));
  return sign < 0 ? -c : c;
}

namespace {

// lowered symbols g(∇_a e_b, e_c) by the Koszul formula
std::vector<Scalar> koszul(const HermitianStructure& h) {
  const NilmanifoldModel& m = *h.model();
  const int N = h.dim();
  auto gbr = [&](int a, int b, int c) {
    Scalar s;
    for (int k = 0; k < N; ++k)
      if (!m.bracket(a, b, k).is_zero() && !h.g()(k, c).is_zero()) s += m.bracket(a, b, k) * Scalar(h.g()(k, c));
    return s;
  };
  std::vector<Scalar> low(size_t(N) * N * N);
  const Scalar half(Rational(1, 2));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) low[(a * N + b) * N + c] = half * (gbr(a, b, c) - gbr(b, c, a) + gbr(c, a, b));
  return low;
}

ConnectionCoefficients raise(const std::vector<Scalar>& low, const HermitianStructure& h,
                             ConnectionCoefficients::Kind kind) {
  const int N = h.dim();
  ConnectionCoefficients conn;
  conn.kind = kind;
  conn.dim = N;
  conn.gamma.assign(size_t(N) * N * N, Scalar());
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        Scalar s;
        for (int e = 0; e < N; ++e) {
          const Scalar& l = low[(a * N + b) * N + e];
          if (!l.is_zero() && !h.g_inv()(e, c).is_zero()) s += l * Scalar(h.g_inv()(e, c));
        }
        conn(a, b, c) = s;
      }
  return conn;
}

}  // namespace

ConnectionCoefficients levi_civita(const HermitianStructure& h) {
  return raise(koszul(h), h, ConnectionCoefficients::Kind::LeviCivita);
}

const ConnectionCoefficients& HermitianStructure::levi_civita() const {
  std::call_once(lc_once_, [this] { lc_ = hslab::levi_civita(*this); });
  return lc_;
}

const ConnectionCoefficients& HermitianStructure::bismut() const {
  std::call_once(bismut_once_, [this] { bismut_ = hslab::bismut(*this); });
  return bismut_;
}

ConnectionCoefficients bismut(const HermitianStructure& h) {
  const int N = h.dim();
  std::vector<Scalar> low = koszul(h);
  InvariantForm torsion_form = dc(h.omega());
  const Scalar half(Rational(1, 2));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) low[(a * N + b) * N + c] += half * eval3(torsion_form, a, b, c);
  return raise(low, h, ConnectionCoefficients::Kind::Bismut);
}

std::vector<Scalar> torsion(const ConnectionCoefficients& conn, const NilmanifoldModel& model) {
  const int N = conn.dim;
  std::vector<Scalar> t(size_t(N) * N * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) t[(a * N + b) * N + c] = conn(a, b, c) - conn(b, a, c) - model.bracket(a, b, c);
  return t;
}

Scalar integrate(const InvariantForm& a) {
  const NilmanifoldModel* m = a.model();
  if (!m) return {};
  InvariantForm ref = InvariantForm::constant(m, Scalar(1));
  const Scalar i_half(GaussRational(Rational(0), Rational(1, 2)));
  for (int j = 0; j < m->n(); ++j)
    ref = wedge(ref, wedge(InvariantForm::generator(m, j), InvariantForm::generator(m, j + m->n()))) * i_half;
  return top_coeff(a) / top_coeff(ref);
}

}  // namespace hslab
