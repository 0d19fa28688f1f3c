#include "hslab/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace hslab {

namespace {

int64_t gcd64(int64_t a, int64_t b) {
  // operands are never INT64_MIN here: callers promote that case to GMP
  return std::gcd(a, b);
}

bool fits(const mpz_class& z) { return z.fits_slong_p() && z != LONG_MIN; }

}  // namespace

Rational::Rational(int64_t num, int64_t den) : num_(num), den_(den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (num == INT64_MIN || den == INT64_MIN) {
    set_from_mpq(mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))));
    return;
  }
  normalize_small();
}

Rational::Rational(const mpq_class& q) { set_from_mpq(q); }

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  return *this;
}

void Rational::normalize_small() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  int64_t g = gcd64(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

void Rational::set_from_mpq(mpq_class q) {
  q.canonicalize();
  if (fits(q.get_num()) && fits(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("Rational: empty literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: bad literal '" + s + "'");
  if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
  q.canonicalize();
  return Rational(q);
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const {
  if (big_) return big_->get_den() == 1;
  return den_ == 1;
}

Rational Rational::operator-() const {
  if (big_ || num_ == INT64_MIN) return Rational(mpq_class(-to_mpq()));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    // a/b + c/d with __int128 intermediates
    __int128 n = static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * rhs.den_;
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    n /= a;
    d /= a;
    if (n > INT64_MIN && n <= INT64_MAX && d <= INT64_MAX) {
      num_ = static_cast<int64_t>(n);
      den_ = static_cast<int64_t>(d);
      return *this;
    }
  }
  set_from_mpq(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    // cross-reduce first so the products stay small
    int64_t g1 = gcd64(num_ < 0 ? -num_ : num_, rhs.den_);
    int64_t g2 = gcd64(rhs.num_ < 0 ? -rhs.num_ : rhs.num_, den_);
    int64_t a = num_ / g1, b = rhs.den_ / g1, c = rhs.num_ / g2, d = den_ / g2;
    int64_t n, m;
    if (!__builtin_mul_overflow(a, c, &n) && !__builtin_mul_overflow(d, b, &m) && n != INT64_MIN) {
      num_ = n;
      den_ = m;
      return *this;
    }
  }
  set_from_mpq(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!rhs.big_ && rhs.num_ != INT64_MIN) {
    Rational inv;
    inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
    inv.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
    return *this *= inv;
  }
  set_from_mpq(to_mpq() / rhs.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  // canonical forms: a big value never equals a small one
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  return a.to_mpq() < b.to_mpq();
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace hslab
