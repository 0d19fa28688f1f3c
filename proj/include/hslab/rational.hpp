#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hslab {

/// Arbitrary-precision rational number.
///
/// Values that fit in a pair of 64-bit integers stay inline; anything larger
/// is promoted to a GMP rational and demoted again when it shrinks back. The
/// representation is always canonical (lowest terms, positive denominator).
class Rational {
 public:
  Rational() = default;
  Rational(int64_t value) : Rational(value, 1) {}  // NOLINT(implicit)
  Rational(int64_t num, int64_t den);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& other);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  /// Parses "a", "-a", "a/b" with arbitrary-length integers.
  static Rational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  int sign() const;
  bool is_integer() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const { return Rational(1) / *this; }

  double to_double() const;
  /// "p" or "p/q".
  std::string to_string() const;
  mpq_class to_mpq() const;

 private:
  void set_from_mpq(mpq_class q);
  void normalize_small();

  int64_t num_ = 0;
  int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace hslab
