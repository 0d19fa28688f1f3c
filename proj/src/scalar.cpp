#include "hslab/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hslab {

GaussRational GaussRational::inverse() const {
  Rational n = norm2();
  if (n.is_zero()) throw std::domain_error("GaussRational: division by zero");
  return {re / n, -im / n};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (im.is_zero() && o.im.is_zero()) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.im.is_zero()) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  return *this *= o.inverse();
}

std::string GaussRational::to_string() const {
  if (im.is_zero()) return re.to_string();
  std::string ipart = im.abs().is_one() ? "i" : im.abs().to_string() + " i";
  if (re.is_zero()) return (im.sign() < 0 ? "-" : "") + ipart;
  return re.to_string() + (im.sign() < 0 ? " - " : " + ") + ipart;
}

Scalar::Scalar(GaussRational q, int k) {
  if (!q.is_zero()) terms_.push_back({k, std::move(q)});
}

bool Scalar::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.q.is_real(); });
}

GaussRational Scalar::coeff(int k) const {
  for (const auto& t : terms_)
    if (t.k == k) return t.q;
  return {};
}

Scalar Scalar::conj() const {
  Scalar r = *this;
  for (auto& t : r.terms_) t.q.im = -t.q.im;
  return r;
}

Scalar Scalar::real_part() const {
  Scalar r;
  for (const auto& t : terms_)
    if (!t.q.re.is_zero()) r.terms_.push_back({t.k, GaussRational(t.q.re)});
  return r;
}

Scalar Scalar::imag_part() const {
  Scalar r;
  for (const auto& t : terms_)
    if (!t.q.im.is_zero()) r.terms_.push_back({t.k, GaussRational(t.q.im)});
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& t : r.terms_) t.q = -t.q;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  Storage out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->k < b->k)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->k < a->k) {
      out.push_back(*b++);
    } else {
      GaussRational q = std::move(a->q);
      q += b->q;
      if (!q.is_zero()) out.push_back({a->k, std::move(q)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    r.terms_.push_back({a.terms_[0].k + b.terms_[0].k, a.terms_[0].q * b.terms_[0].q});
    return r;
  }
  for (const auto& x : a.terms_) {
    Scalar part;
    for (const auto& y : b.terms_) part.terms_.push_back({x.k + y.k, x.q * y.q});
    r += part;
  }
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.terms_.size() != 1) throw std::domain_error("Scalar: division only by nonzero monomials");
  GaussRational inv = o.terms_[0].q.inverse();
  for (auto& t : terms_) {
    t.k -= o.terms_[0].k;
    t.q *= inv;
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].k != b.terms_[i].k || a.terms_[i].q != b.terms_[i].q) return false;
  return true;
}

std::complex<double> Scalar::to_complex() const {
  std::complex<double> z = 0;
  for (const auto& t : terms_) z += t.q.to_complex() * std::pow(kPi, t.k);
  return z;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + t.q.to_string() + ")";
    if (t.k == 1) {
      s += " pi";
    } else if (t.k != 0) {
      s += " pi^" + std::to_string(t.k);
    }
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

namespace {

// expr := ['+'|'-'] term (('+'|'-') term)*
// term := factor (['*'] factor)*
// factor := integer ['/' integer] | 'i' | 'pi' ['^' ['-'] integer] | '(' expr ')'
class LiteralParser {
 public:
  explicit LiteralParser(std::string_view s) : s_(s) {}

  Scalar run() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("scalar literal '" + std::string(s_) + "': " + why + " at offset " +
                                std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'i' || c == 'p';
  }

  Scalar expr() {
    Scalar acc;
    bool neg = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      neg = true;
    }
    Scalar t = term();
    acc = neg ? -t : t;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Scalar term() {
    Scalar v = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        v *= factor();
      } else if (starts_factor()) {
        v *= factor();
      } else {
        break;
      }
    }
    return v;
  }

  std::string digits() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Scalar factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      int k = 1;
      if (peek('^')) {
        ++pos_;
        bool neg = false;
        if (peek('-')) {
          ++pos_;
          neg = true;
        }
        k = std::stoi(digits());
        if (neg) k = -k;
      }
      return Scalar::pi(k);
    }
    if (c == 'i') {
      ++pos_;
      return Scalar::I();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (peek('/')) {
        ++pos_;
        num += "/" + digits();
      }
      return Scalar(Rational::parse(num));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return LiteralParser(text).run(); }

}  // namespace hslab
