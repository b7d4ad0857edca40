#pragma once

#include <compare>
#include <string>

#include "spoquant/errors.hpp"
#include "spoquant/rational.hpp"

namespace spoquant {

/// Element of (1/2)Z, stored as twice its value. Heisenberg degrees and the
/// d-component of bigrades live here.
struct HalfInt {
  int tw = 0;  // the represented value is tw/2

  static constexpr HalfInt of_int(int k) { return HalfInt{2 * k}; }
  static constexpr HalfInt of_twice(int t) { return HalfInt{t}; }

  bool is_integer() const { return tw % 2 == 0; }
  int floor_int() const { return (tw % 2 == 0) ? tw / 2 : (tw - 1) / 2; }
  int ceil_int() const { return (tw % 2 == 0) ? tw / 2 : (tw + 1) / 2; }

  Rational to_rational() const { return Rational(tw, 2); }

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.tw + b.tw}; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.tw - b.tw}; }

  std::string str() const {
    if (tw % 2 == 0) return std::to_string(tw / 2);
    return std::to_string(tw) + "/2";
  }

  /// Parses "k" or "p/2" (also accepts "p/1"). Throws DomainError otherwise.
  static HalfInt parse(std::string_view s) {
    Rational q = Rational::parse(s);
    Rational doubled = q * Rational(2);
    // doubled must be an integer that fits in int
    const mpq_class& raw = doubled.raw();
    if (raw.get_den() != 1) throw DomainError("not a half-integer: " + std::string(s));
    if (!raw.get_num().fits_sint_p()) throw DomainError("half-integer out of range: " + std::string(s));
    return HalfInt{static_cast<int>(raw.get_num().get_si())};
  }
};

/// Joint (order, Heisenberg order) of an operator or fine symbol.
/// Every realizable bigrade satisfies ceil(d) <= k <= 2d.
struct Bigrade {
  int k = 0;
  HalfInt d;

  Bigrade() = default;
  Bigrade(int k_, HalfInt d_) : k(k_), d(d_) {
    if (d.ceil_int() > k || k > d.tw)
      throw DomainError("invalid bigrade (" + std::to_string(k) + "," + d.str() + ")");
  }

  friend bool operator==(const Bigrade&, const Bigrade&) = default;
  std::string str() const { return "(" + std::to_string(k) + "," + d.str() + ")"; }
};

}  // namespace spoquant
