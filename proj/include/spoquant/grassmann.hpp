#pragma once

#include <bit>
#include <cstdint>

namespace spoquant {

/// Sign conventions for products and left derivatives of anticommuting
/// generators. Monomials are bitmasks; the canonical word lists set bits in
/// increasing order, with the reordering sign folded into the coefficient.

/// Sign of concatenating canonical words a and b into one canonical word,
/// assuming a & b == 0: (-1)^{#{(i,j) in a x b : i > j}}.
inline int concat_sign(std::uint32_t a, std::uint32_t b) {
  int inv = 0;
  std::uint32_t rest = b;
  while (rest) {
    int j = std::countr_zero(rest);
    rest &= rest - 1;
    inv += std::popcount(a >> (j + 1));
  }
  return (inv & 1) ? -1 : +1;
}

/// Sign picked up by the left derivative with respect to generator `bit`
/// acting on the canonical word `mask` (which must contain `bit`):
/// (-1)^{#generators before bit}.
inline int left_derivative_sign(std::uint32_t mask, int bit) {
  int before = std::popcount(mask & ((1u << bit) - 1u));
  return (before & 1) ? -1 : +1;
}

/// Sign of moving a single generator `bit` from the far left into the
/// canonical word `mask` (bit not in mask): passes over all smaller indices.
inline int left_mul_sign(std::uint32_t mask, int bit) {
  int below = std::popcount(mask & ((1u << bit) - 1u));
  return (below & 1) ? -1 : +1;
}

}  // namespace spoquant
