#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "bvmatch/error.hpp"

namespace bvmatch {

using BigInt = mpz_class;

/// Exact rational number in canonical form (gcd(|num|, den) = 1, den >= 1).
/// Text form is "p/q" or "p"; decimals are rejected.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long v) : q_(BigInt(std::to_string(v))) {}  // NOLINT
  explicit Rational(const BigInt& v) : q_(v) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) fail(ErrorKind::parse_error, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rational(long long num, long long den)
      : Rational(BigInt(std::to_string(num)), BigInt(std::to_string(den))) {}

  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    auto parse_int = [&](std::string_view s, bool allow_sign) {
      s = trim(s);
      std::size_t i = 0;
      if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) fail(ErrorKind::parse_error, "malformed rational '" + std::string(text) + "'");
      for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') {
          fail(ErrorKind::parse_error, "malformed rational '" + std::string(text) + "'");
        }
      }
      std::string digits(s[0] == '+' ? s.substr(1) : s);
      return BigInt(digits);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, true));
    BigInt num = parse_int(text.substr(0, slash), true);
    BigInt den = parse_int(text.substr(slash + 1), false);
    if (den == 0) fail(ErrorKind::parse_error, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }

  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  /// Largest integer <= *this.
  BigInt floor() const {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) fail(ErrorKind::invariant_violation, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}

  mpq_class q_;
};

/// floor(a / b) for b != 0.
inline BigInt floor_div(const Rational& a, const Rational& b) { return (a / b).floor(); }

inline Rational pow2(unsigned e) {
  BigInt v = 1;
  v <<= e;
  return Rational(v);
}

inline std::int64_t to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) fail(ErrorKind::invariant_violation, "integer " + v.get_str() + " exceeds 64 bits");
  return v.get_si();
}

}  // namespace bvmatch
