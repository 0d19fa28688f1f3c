#include <doctest.h>

#include <random>

#include "hslab/iwasawa.hpp"
#include "hslab/string_algebroid.hpp"
#include "support.hpp"

using namespace hslab;

namespace {

const NilmanifoldModel* M() { return iwasawa::model(); }

InvariantForm F(int64_t m, int64_t n, int64_t p) { return curvature_from_triple({m, n, p}, M()); }

Scalar pi_pow(int k) { return Scalar(GaussRational(1), k); }

SystemParams catalog(const InvariantForm& shift = InvariantForm(), LineBundleTriple a = {1, 2, 2},
                     LineBundleTriple b = {2, -1, 0}) {
  InvariantForm w = iwasawa::omega0();
  if (!shift.is_zero()) w += shift;
  SystemParams s{curvature_from_triple(a, M()), curvature_from_triple(b, M()), Scalar(), iwasawa::holomorphic_volume(),
                 HermitianStructure::create(w)};
  s.alpha = alpha_solve(s.f0, s.f1, *s.h);
  return s;
}

QSection unit(int i) {
  QSection x = QSection::Constant(8, Scalar());
  x(i) = Scalar(1);
  return x;
}

QSection random_section(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  QSection x(8);
  for (int i = 0; i < 8; ++i) x(i) = Scalar(GaussRational(Rational(c(rng)), Rational(c(rng))));
  return x;
}

LineBundleTriple random_triple(std::mt19937& rng) {
  std::uniform_int_distribution<int> v(-2, 2);
  LineBundleTriple t;
  do {
    t = {v(rng), v(rng), v(rng)};
  } while (t.is_zero());
  return t;
}

// random configuration, not necessarily a solution
SystemParams random_params(std::mt19937& rng) {
  auto tau = iwasawa::tau_basis();
  std::uniform_int_distribution<int> which(-1, 3), scale(0, 2);
  InvariantForm w = iwasawa::omega0();
  int i = which(rng);
  if (i >= 0) w += tau[i] * Scalar(Rational(1, 10));
  LineBundleTriple a, b;
  do {
    a = random_triple(rng);
    b = random_triple(rng);
  } while (a.norm2() == b.norm2());
  SystemParams s{curvature_from_triple(a, M()), curvature_from_triple(b, M()), Scalar(), iwasawa::holomorphic_volume(),
                 HermitianStructure::create(w)};
  s.alpha = alpha_solve(s.f0, s.f1, *s.h) * Scalar(Rational(1 + scale(rng), 1 + scale(rng)));
  return s;
}

QOperator dbar_squared(const SystemParams& s) {
  QOperator b = dolbeault_Q_holomorphic(s);
  return component(d(b), 0, 2) + wedge(b, b);
}

}  // namespace

TEST_CASE("pairing on the invariant frame") {
  auto s = catalog();
  SMat p = pairing_matrix(*s.h, s.alpha);
  CHECK(p == SMat(p.transpose()));
  CHECK_FALSE(determinant(p).is_zero());
  CHECK(p(6, 6) == -s.alpha);
  CHECK(p(7, 7) == s.alpha);
  // T and T* are isotropic and dual under the Bismut isomorphism
  SMat phi = bismut_iso(*s.h);
  SMat pulled = SMat(phi.transpose()) * p * phi;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      CHECK(pulled(j, k).is_zero());
      CHECK(pulled(5 + j, 5 + k).is_zero());
      CHECK(pulled(j, 5 + k) == (j == k ? Scalar(Rational(1, 2)) : Scalar()));
    }
}

TEST_CASE("D^G is orthogonal and its (0,1) part is the Dolbeault operator") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    auto s = random_params(rng);
    QOperator a = connection_DG(s);
    CHECK(pairing_skewness(a, *s.h, s.alpha).is_zero());
    CHECK(component(a, 0, 1) == dolbeault_Q(s));
    CHECK(pairing_skewness(curvature(a), *s.h, s.alpha).is_zero());
    QSection x = random_section(rng), y = random_section(rng);
    auto ax = apply(a, x), ay = apply(a, y);
    SMat p = pairing_matrix(*s.h, s.alpha);
    InvariantForm leibniz(M());
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (!p(i, j).is_zero()) leibniz += ax[i] * (p(i, j) * y(j)) + ay[j] * (p(i, j) * x(i));
    CHECK(leibniz.is_zero());
    // ∂̄_Q² = 0 exactly when the Bianchi identity holds
    CHECK(dbar_squared(s).is_zero() == hs_residuals(s).bianchi.is_zero());
  }
}

TEST_CASE("D^G entries") {
  auto s = catalog();
  REQUIRE(s.alpha == pi_pow(-2) * Scalar(Rational(1, 8)));
  QOperator a = connection_DG(s);
  // T-component along Z_1 of D E_0: α g^{-1}(i_V F_0) = 2απ(m ω_1 + (n − ip) ω_2)
  CHECK(a(0, 6) == parse_form(M(), "(1/4) pi^-1 w1 + (1/2 - 1/2 i) pi^-1 w2"));
  CHECK(a(0, 7) == parse_form(M(), "(-1/2) pi^-1 w1 + (1/4) pi^-1 w2"));
  CHECK(a(6, 0) == contract_basis(0, s.f0));
  CHECK(a(6, 6).is_zero());
  CHECK(a(7, 7).is_zero());

  std::vector<InvariantForm> flat_d(3);
  auto torus = NilmanifoldModel::create(3, flat_d);
  auto ht = HermitianStructure::create(parse_form(torus.get(), "(1/2 i) w1^w1b + (1/2 i) w2^w2b + (1/2 i) w3^w3b"));
  SystemParams flat{InvariantForm(torus.get()), InvariantForm(torus.get()), Scalar(1), InvariantForm(torus.get()), ht};
  CHECK(connection_DG(flat).is_zero());
  CHECK(extension_class_gamma(flat).is_zero());
}

TEST_CASE("metric G") {
  auto s = catalog();
  QMetric g = metric_G(*s.h, s.alpha);
  CHECK(g.signature() == std::pair{7, 1});
  CHECK(hermitian_pairing(unit(6), unit(6), g) == -s.alpha);
  CHECK(hermitian_pairing(unit(7), unit(7), g) == s.alpha);
  QMetric flipped = metric_G(*s.h, -s.alpha);
  CHECK(flipped.signature() == std::pair{7, 1});
  CHECK(hermitian_pairing(unit(6), unit(6), flipped) == s.alpha);
  CHECK(hermitian_pairing(unit(7), unit(7), flipped) == -s.alpha);
  CHECK_THROWS_AS(metric_G(*s.h, Scalar()), std::invalid_argument);

  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    QSection x = random_section(rng), y = random_section(rng);
    CHECK(hermitian_pairing(x, y, g) == pairing(x, sigma(y, *s.h), *s.h, s.alpha));
    CHECK(conjugate_section(conjugate_section(x, *s.h), *s.h) == x);
    CHECK(pairing(conjugate_section(x, *s.h), conjugate_section(y, *s.h), *s.h, s.alpha) ==
          pairing(x, y, *s.h, s.alpha).conj());
  }
  CHECK((connection_DG(s) + adjoint(connection_DG(s), g)).is_zero());
}

TEST_CASE("hermitian-einstein residual") {
  CHECK(he_residual_G(catalog()).is_zero());
  auto tau = iwasawa::tau_basis();
  for (int i = 0; i < 4; ++i) {
    // τ only preserves the Hermitian-Yang-Mills condition for m = 0
    CHECK_FALSE(he_residual_G(catalog(tau[i] * Scalar(Rational(1, 10)))).is_zero());
    auto s = catalog(tau[i] * Scalar(Rational(1, 10)), {0, 1, 2}, {0, 2, 0});
    CHECK(hs_residuals(s).all_zero());
    CHECK(he_residual_G(s).is_zero());
    s.alpha = s.alpha * Scalar(Rational(11, 10));
    CHECK_FALSE(he_residual_G(s).is_zero());
  }
  auto s = catalog();
  s.alpha = s.alpha + pi_pow(-2) * Scalar(Rational(1, 1000));
  CHECK_FALSE(he_residual_G(s).is_zero());

  std::mt19937 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    auto r = random_params(rng);
    CHECK(he_residual_G(r).is_zero() == hs_residuals(r).all_zero());
  }
}

TEST_CASE("dolbeault operator on frame sections") {
  auto s = catalog();
  QOperator b = dolbeault_Q_holomorphic(s);
  // ξ-frame: holomorphic coframe, constant coefficients
  for (int k = 5; k < 8; ++k)
    for (int i = 0; i < 8; ++i) CHECK(b(i, k).is_zero());
  for (const auto& xi : cotangent_span(*s.h))
    for (const auto& f : dolbeault_Q(xi, s)) CHECK(f.is_zero());

  // V = Z_1: i_{Z_1}F into End, −i_{Z_1}(2i∂ω_0) = ω_{23̄} read on ω_2
  CHECK(b(3, 0) == contract_basis(0, s.f0));
  CHECK(b(4, 0) == contract_basis(0, s.f1));
  CHECK(b(5, 0).is_zero());
  CHECK(b(6, 0) == parse_form(M(), "(-1) w3b"));
  CHECK(b(7, 0).is_zero());
  for (int i = 0; i < 3; ++i) CHECK(b(i, 0).is_zero());

  // r_0 = 1: −2αF_0 into T*, evaluated on Z_k
  CHECK(b(5, 3) == parse_form(M(), "(1/4) pi^-1 w1b + (1/2 + 1/2 i) pi^-1 w2b"));
  CHECK(b(6, 3) == parse_form(M(), "(1/2 - 1/2 i) pi^-1 w1b + (-1/4) pi^-1 w2b"));
  CHECK(b(7, 3).is_zero());
  CHECK(b(3, 3).is_zero());

  std::vector<InvariantForm> dz(3);
  dz[2] = parse_form(M(), "w1^w2b");
  auto non_holo = NilmanifoldModel::create(3, dz);
  auto hn = HermitianStructure::create(parse_form(non_holo.get(), "(1/2 i) w1^w1b + (1/2 i) w2^w2b + (1/2 i) w3^w3b"));
  SystemParams bad{InvariantForm(non_holo.get()), InvariantForm(non_holo.get()), Scalar(1), InvariantForm(non_holo.get()), hn};
  CHECK_THROWS_AS(dolbeault_Q_holomorphic(bad), std::invalid_argument);
}

TEST_CASE("extension class") {
  auto s = catalog();
  QOperator g = extension_class_gamma(s);
  CHECK_FALSE(g.is_zero());
  QOperator b = dolbeault_Q_holomorphic(s);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(g(i, j) == ((i >= 5 && j < 5) ? b(i, j) : InvariantForm(M())));

  SystemParams flipped = s;
  flipped.alpha = -s.alpha;
  QOperator gf = extension_class_gamma(flipped);
  for (int k = 5; k < 8; ++k) {
    for (int j = 0; j < 3; ++j) CHECK(gf(k, j) == g(k, j));
    for (int j = 3; j < 5; ++j) CHECK(gf(k, j) == -g(k, j));
  }
}

TEST_CASE("invariant subbundles") {
  auto s = catalog();
  auto b0 = omega_power(*s.h, 2);
  auto ts = cotangent_span(*s.h);
  auto hol = check_invariant_subbundle(ts, s, InvarianceMode::Holomorphic, b0);
  CHECK(hol.isotropic);
  CHECK(hol.invariant);
  CHECK(hol.c1.is_zero());
  CHECK(hol.slope.is_zero());

  // D^G moves T* into End through −F(V, ·)
  QOperator a = connection_DG(s);
  auto image = apply(a, ts[0]);
  CHECK_FALSE(image[6].is_zero());
  auto dp = check_invariant_subbundle(ts, s, InvarianceMode::DPreserved, b0);
  CHECK(dp.isotropic);
  CHECK_FALSE(dp.invariant);

  QSection null = unit(6) + unit(7);
  auto nv = check_invariant_subbundle({null}, s, InvarianceMode::Holomorphic, b0);
  CHECK(nv.isotropic);
  CHECK_FALSE(nv.invariant);
  CHECK_FALSE(check_invariant_subbundle({unit(6)}, s, InvarianceMode::DPreserved, b0).isotropic);

  CHECK_THROWS_AS(check_invariant_subbundle({ts[0], ts[0] * Scalar(2)}, s, InvarianceMode::Holomorphic, b0),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_invariant_subbundle({unit(0) * Scalar::pi()}, s, InvarianceMode::Holomorphic, b0),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_invariant_subbundle({}, s, InvarianceMode::Holomorphic, b0), std::invalid_argument);
}

TEST_CASE("operator json round trip") {
  auto s = catalog(iwasawa::tau_basis()[2] * Scalar(Rational(1, 10)));
  for (const QOperator& op : {connection_DG(s), dolbeault_Q(s), he_residual_G(s), extension_class_gamma(s)})
    CHECK(QOperator::from_json(M(), op.to_json()) == op);
  CHECK_THROWS_AS(QOperator::from_json(M(), "[[\"w1\"],[]]"), std::invalid_argument);
  CHECK_THROWS_AS(QOperator::from_json(M(), "{"), std::invalid_argument);
  CHECK_THROWS_AS(QOperator::from_json(M(), "[[1]]"), std::invalid_argument);
}
