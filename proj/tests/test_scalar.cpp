#include <doctest.h>

#include <random>

#include "hslab/scalar.hpp"

using hslab::GaussRational;
using hslab::Rational;
using hslab::Scalar;

TEST_CASE("rational arithmetic agrees with GMP across the overflow boundary") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int64_t> big(-(int64_t(1) << 62), int64_t(1) << 62);
  std::uniform_int_distribution<int64_t> small(1, 1000);
  for (int trial = 0; trial < 2000; ++trial) {
    int64_t a = big(rng), b = small(rng), c = big(rng), e = small(rng);
    Rational x(a, b), y(c, e);
    mpq_class qx{mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b))};
    mpq_class qy{mpz_class(static_cast<long>(c)), mpz_class(static_cast<long>(e))};
    qx.canonicalize();
    qy.canonicalize();
    CHECK((x + y).to_mpq() == qx + qy);
    CHECK((x - y).to_mpq() == qx - qy);
    CHECK((x * y).to_mpq() == qx * qy);
    if (c != 0) CHECK((x / y).to_mpq() == qx / qy);
    CHECK((x < y) == (qx < qy));
  }
}

TEST_CASE("large values demote back to the inline form") {
  Rational huge = Rational(int64_t(1) << 62) * Rational(int64_t(1) << 62);
  Rational back = huge / Rational(int64_t(1) << 62);
  CHECK(back == Rational(int64_t(1) << 62));
  CHECK(huge.to_string() == "21267647932558653966460912964485513216");
  CHECK(Rational(INT64_MIN).to_string() == "-9223372036854775808");
  CHECK((-Rational(INT64_MIN)).sign() == 1);
}

TEST_CASE("rational canonical form") {
  CHECK(Rational(6, -4).to_string() == "-3/2");
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS(Rational::parse("1/x"));
}

TEST_CASE("gaussian rationals") {
  GaussRational z(Rational(1), Rational(2));
  GaussRational w(Rational(3), Rational(-1));
  CHECK(z * w == GaussRational(Rational(5), Rational(5)));
  CHECK((z / w) * w == z);
  CHECK(z.conj() * z == GaussRational(Rational(5)));
  CHECK(GaussRational::I() * GaussRational::I() == GaussRational(-1));
}

TEST_CASE("scalars are Laurent polynomials in pi") {
  Scalar pi = Scalar::pi();
  Scalar x = Scalar(2) * pi * pi + Scalar::I();
  CHECK(x.terms().size() == 2);
  CHECK(x.coeff(2) == GaussRational(2));
  CHECK(x - x == Scalar());
  CHECK((x * x).coeff(2) == GaussRational(Rational(0), Rational(4)));
  Scalar alpha = Scalar(1) / (Scalar(8) * Scalar::pi(2));
  CHECK(alpha.terms()[0].k == -2);
  CHECK(alpha * Scalar(8) * Scalar::pi(2) == Scalar(1));
  CHECK_THROWS_AS(Scalar(1) / x, std::domain_error);
  CHECK_THROWS_AS(Scalar(1) / Scalar(), std::domain_error);
  CHECK(x.conj() == Scalar(2) * pi * pi - Scalar::I());
  CHECK(std::abs(x.to_complex() - std::complex<double>(2 * hslab::kPi * hslab::kPi, 1)) < 1e-12);
}

TEST_CASE("literal formatting round-trips") {
  std::vector<Scalar> samples = {
      Scalar(),
      Scalar(Rational(-3, 7)),
      Scalar::I() * Scalar::pi(-2),
      Scalar(GaussRational(Rational(1, 2), Rational(-5, 3)), 1) + Scalar(Rational(4)),
      Scalar(GaussRational(Rational(0), Rational(-1)), 3),
  };
  for (const auto& s : samples) CHECK(Scalar::parse(s.to_string()) == s);
  CHECK(Scalar(GaussRational(Rational(1, 2), Rational(-5, 3)), 1).to_string() == "(1/2 - 5/3 i) pi");
  CHECK(Scalar::parse("3/2+1/4*i*pi^2") == Scalar(Rational(3, 2)) + Scalar(GaussRational(Rational(0), Rational(1, 4)), 2));
  CHECK(Scalar::parse("-i*pi^-1") == -Scalar::I() * Scalar::pi(-1));
  CHECK(Scalar::parse("(1 + 2 i) pi") == Scalar(GaussRational(Rational(1), Rational(2)), 1));
  CHECK_THROWS(Scalar::parse("1 +"));
  CHECK_THROWS(Scalar::parse("pj"));
  CHECK_THROWS(Scalar::parse("(1"));
}
