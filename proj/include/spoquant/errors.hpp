#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spoquant {

/// Base class for all engine errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structural misuse: mismatched n, mixed parity where homogeneity is
/// required, weight flavor mismatch, index out of range, empty input.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Expression syntax or semantic error; pos is a byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at byte " + std::to_string(pos) + ")"), pos(pos) {}
  std::size_t pos;
};

/// A named value appearing in a critical-value witness.
struct WitnessEntry {
  std::string name;
  std::string value;
};

/// A resonant weight hit a vanishing denominator. `set` names the critical
/// set; the witness entries substituted into that set's defining formula
/// reproduce the weight exactly.
class CriticalValueError : public Error {
 public:
  CriticalValueError(std::string set_name, std::string delta_str,
                     std::vector<WitnessEntry> wit)
      : Error(render(set_name, delta_str, wit)),
        set(std::move(set_name)),
        delta(std::move(delta_str)),
        witness(std::move(wit)) {}

  std::string set;
  std::string delta;
  std::vector<WitnessEntry> witness;

 private:
  static std::string render(const std::string& s, const std::string& d,
                            const std::vector<WitnessEntry>& w) {
    std::string out = "critical value delta=" + d + " in " + s + " (witness:";
    for (const auto& e : w) out += " " + e.name + "=" + e.value;
    out += ")";
    return out;
  }
};

/// Two Casimir eigenvalues collide on strata linked by the triangular
/// eigenvector construction, so the system has no unique solution.
class SingularSystemError : public CriticalValueError {
 public:
  SingularSystemError(std::string delta_str, std::vector<WitnessEntry> wit)
      : CriticalValueError("C_crit", std::move(delta_str), std::move(wit)) {}
};

}  // namespace spoquant
