#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "spoquant/errors.hpp"
#include "spoquant/grassmann.hpp"
#include "spoquant/rational.hpp"

namespace spoquant {

inline constexpr int kMaxOddGenerators = 12;

/// Monomial key of a superfunction term: x^xe * theta_{i1}...theta_{ik},
/// with the theta indices given by the set bits of `odd` (bit i-1 <-> theta_i)
/// and listed in increasing order.
struct SpKey {
  int xe = 0;
  std::uint32_t odd = 0;
  friend auto operator<=>(const SpKey&, const SpKey&) = default;
};

/// Polynomial superfunction on the super circle: an element of
/// Q[x] (x) Lambda(theta_1..theta_n). Terms are kept in canonical form
/// (increasing theta indices, reordering signs folded into coefficients);
/// zero coefficients are never stored.
class SuperPoly {
 public:
  explicit SuperPoly(int n) : n_(check_n(n)) {}

  static SuperPoly zero(int n) { return SuperPoly(n); }
  static SuperPoly constant(int n, const Rational& c) {
    SuperPoly p(n);
    p.add_term(0, 0, c);
    return p;
  }
  static SuperPoly x(int n, int e = 1) {
    SuperPoly p(n);
    p.add_term(e, 0, 1);
    return p;
  }
  static SuperPoly theta(int n, int i) {
    SuperPoly p(n);
    p.add_term(0, p.theta_bit(i), 1);
    return p;
  }
  static SuperPoly monomial(int n, int xe, std::uint32_t odd, const Rational& c) {
    SuperPoly p(n);
    if (xe < 0) throw DomainError("negative x exponent");
    if (odd >> n) throw DomainError("theta index exceeds n");
    p.add_term(xe, odd, c);
    return p;
  }

  int n() const { return n_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<SpKey, Rational>& terms() const { return t_; }

  /// Accumulates c * x^xe * theta^odd, pruning a zero result.
  void add_term(int xe, std::uint32_t odd, const Rational& c) {
    if (c.is_zero()) return;
    SpKey key{xe, odd};
    auto it = t_.find(key);
    if (it == t_.end()) {
      t_.emplace(key, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  SuperPoly& operator+=(const SuperPoly& o) {
    require_same_n(o);
    for (const auto& [k, c] : o.t_) add_term(k.xe, k.odd, c);
    return *this;
  }
  SuperPoly& operator-=(const SuperPoly& o) {
    require_same_n(o);
    for (const auto& [k, c] : o.t_) add_term(k.xe, k.odd, -c);
    return *this;
  }
  friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
  friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
  SuperPoly operator-() const {
    SuperPoly r(n_);
    for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
    return r;
  }

  friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
    a.require_same_n(b);
    SuperPoly r(a.n_);
    for (const auto& [ka, ca] : a.t_) {
      for (const auto& [kb, cb] : b.t_) {
        if (ka.odd & kb.odd) continue;  // repeated theta annihilates
        Rational c = ca * cb;
        if (concat_sign(ka.odd, kb.odd) < 0) c = -c;
        r.add_term(ka.xe + kb.xe, ka.odd | kb.odd, c);
      }
    }
    return r;
  }

  friend SuperPoly operator*(const Rational& s, const SuperPoly& a) {
    SuperPoly r(a.n_);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : a.t_) r.t_.emplace(k, s * c);
    return r;
  }

  friend bool operator==(const SuperPoly& a, const SuperPoly& b) {
    return a.n_ == b.n_ && a.t_ == b.t_;
  }

  /// Parity of a homogeneous element (0 even, 1 odd); nullopt for 0 or mixed.
  std::optional<int> parity() const {
    std::optional<int> p;
    for (const auto& [k, c] : t_) {
      int tp = std::popcount(k.odd) & 1;
      if (!p) {
        p = tp;
      } else if (*p != tp) {
        return std::nullopt;
      }
    }
    return p;
  }

  bool is_homogeneous() const { return t_.empty() || parity().has_value(); }

  /// Parity for use in sign rules; throws on mixed parity. Zero counts even.
  int parity_or_throw() const {
    if (t_.empty()) return 0;
    auto p = parity();
    if (!p) throw DomainError("mixed-parity superfunction where homogeneous required");
    return *p;
  }

  SuperPoly even_part() const { return parity_part(0); }
  SuperPoly odd_part() const { return parity_part(1); }

  /// d/dx, acting on the polynomial coefficients.
  SuperPoly dx() const {
    SuperPoly r(n_);
    for (const auto& [k, c] : t_) {
      if (k.xe == 0) continue;
      r.add_term(k.xe - 1, k.odd, Rational(k.xe) * c);
    }
    return r;
  }

  /// Left partial derivative with respect to theta_i:
  /// dtheta_i(f g) = dtheta_i(f) g + (-1)^{p(f)} f dtheta_i(g).
  SuperPoly dtheta(int i) const {
    int bit = theta_index(i);
    SuperPoly r(n_);
    std::uint32_t b = 1u << bit;
    for (const auto& [k, c] : t_) {
      if (!(k.odd & b)) continue;
      Rational cc = c;
      if (left_derivative_sign(k.odd, bit) < 0) cc = -cc;
      r.add_term(k.xe, k.odd & ~b, cc);
    }
    return r;
  }

  /// Contact distribution generator Dbar_i = dtheta_i - theta_i d/dx.
  SuperPoly dbar(int i) const {
    SuperPoly r = dtheta(i);
    r -= theta(n_, i) * dx();
    return r;
  }

  /// Left multiplication by theta_i.
  SuperPoly theta_mul(int i) const {
    int bit = theta_index(i);
    SuperPoly r(n_);
    std::uint32_t b = 1u << bit;
    for (const auto& [k, c] : t_) {
      if (k.odd & b) continue;
      Rational cc = c;
      if (left_mul_sign(k.odd, bit) < 0) cc = -cc;
      r.add_term(k.xe, k.odd | b, cc);
    }
    return r;
  }

  /// Total degree, counting x once and each theta once; -1 for zero.
  int degree() const {
    int d = -1;
    for (const auto& [k, c] : t_) {
      int td = k.xe + std::popcount(k.odd);
      if (td > d) d = td;
    }
    return d;
  }

  std::uint32_t theta_bit(int i) const { return 1u << theta_index(i); }

 private:
  static int check_n(int n) {
    if (n < 1 || n > kMaxOddGenerators)
      throw DomainError("n out of range [1," + std::to_string(kMaxOddGenerators) + "]");
    return n;
  }
  int theta_index(int i) const {
    if (i < 1 || i > n_) throw DomainError("theta index " + std::to_string(i) + " exceeds n");
    return i - 1;
  }
  void require_same_n(const SuperPoly& o) const {
    if (n_ != o.n_) throw DomainError("mixed n in superfunction arithmetic");
  }
  SuperPoly parity_part(int p) const {
    SuperPoly r(n_);
    for (const auto& [k, c] : t_)
      if ((std::popcount(k.odd) & 1) == p) r.t_.emplace(k, c);
    return r;
  }

  int n_;
  std::map<SpKey, Rational> t_;
};

}  // namespace spoquant
