#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

#include "spoquant/errors.hpp"

namespace spoquant {

/// Exact rational number. Always stored in canonical form: reduced fraction,
/// positive denominator. All arithmetic is exact; there is no floating point
/// anywhere in the engine.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long num) : v_(num) {}  // NOLINT: implicit by design
  Rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p" or "p/q" with optional leading '-'. Throws DomainError on
  /// malformed input or zero denominator.
  static Rational parse(std::string_view s);

  bool is_zero() const { return v_ == 0; }
  int sgn() const { return mpq_sgn(v_.get_mpq_t()); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.v_ != b.v_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.v_ <= b.v_;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return a.v_ > b.v_;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return a.v_ >= b.v_;
  }

  /// Canonical text form: "p" when the denominator is 1, else "p/q".
  std::string str() const;

  /// JSON form: always "p/q", denominator included even when it is 1.
  std::string json_str() const;

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

}  // namespace spoquant
