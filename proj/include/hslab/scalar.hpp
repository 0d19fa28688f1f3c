#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/container/small_vector.hpp>

#include "hslab/rational.hpp"

namespace hslab {

/// a + b i with a, b rational.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
  GaussRational(int64_t r) : re(r) {}              // NOLINT(implicit)
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational I() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  GaussRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  GaussRational inverse() const;

  GaussRational operator-() const { return {-re, -im}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  /// "a", "b i", "a + b i", "a - b i".
  std::string to_string() const;
};

/// Exact complex number Σ_k q_k π^k with Gaussian-rational q_k.
///
/// Terms are kept sorted by exponent with no zero coefficients, so equality
/// is structural.
class Scalar {
 public:
  struct Term {
    int k;
    GaussRational q;
  };
  using Storage = boost::container::small_vector<Term, 2>;

  Scalar() = default;
  Scalar(int64_t v) : Scalar(GaussRational(v)) {}  // NOLINT(implicit)
  Scalar(Rational v) : Scalar(GaussRational(std::move(v))) {}  // NOLINT(implicit)
  Scalar(GaussRational q, int k = 0);  // NOLINT(implicit)

  static Scalar I() { return Scalar(GaussRational::I()); }
  static Scalar pi(int k = 1) { return Scalar(GaussRational(1), k); }
  static Scalar rational(int64_t num, int64_t den) { return Scalar(Rational(num, den)); }

  /// Accepts canonical output of to_string() as well as loose arithmetic
  /// such as "3/2+1/4*i*pi^2 - i*pi^-1" or "(1 + 2 i) pi".
  static Scalar parse(std::string_view text);

  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const Storage& terms() const { return terms_; }
  /// Coefficient of π^k (zero if absent).
  GaussRational coeff(int k) const;

  Scalar conj() const;
  Scalar real_part() const;
  Scalar imag_part() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Divides by a monomial; throws std::domain_error for zero or
  /// multi-term divisors.
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::complex<double> to_complex() const;
  /// Canonical literal "(a/b + c/d i) pi^k + ...", "0" for zero.
  std::string to_string() const;

 private:
  Storage terms_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);
std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Numeric value used for float certificates.
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace hslab
