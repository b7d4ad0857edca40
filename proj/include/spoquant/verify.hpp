// Identity-verification suites: systematic exact checks of the algebraic
// laws the library is built on (vector-field actions, bracket identities,
// commutation lemmas, Casimir relations, quantization equivariance).
//
// Every check is an exact rational identity evaluated on finite sweeps of
// basis elements; the first counterexample is captured with both sides
// rendered so a failure is immediately actionable.
#pragma once

#include <string>
#include <vector>

#include "spoquant/halfint.hpp"
#include "spoquant/rational.hpp"
#include "spoquant/superpoly.hpp"

namespace spoquant {

struct CheckResult {
  std::string name;
  bool pass = true;
  bool informational = false;  // reported, never counted as a failure
  std::string detail;          // first counterexample (both sides rendered)
};

struct VerifyOptions {
  int n = 3;
  Rational lam = Rational(1, 3);   // lower weight of operator spaces
  Rational mu = Rational(46, 21);  // upper weight; delta = mu - lam
  HalfInt d_max = HalfInt::of_int(2);
  int x_max = 2;  // max power of x in swept coefficient monomials

  Rational delta() const { return mu - lam; }
};

/// Basis sweeps shared by the suites and by acceptance checks.
std::vector<SuperPoly> coeff_monomials(int n, int x_max);
std::vector<SuperPoly> spo_hamiltonians(int n);
std::vector<SuperPoly> affine_hamiltonians(int n);
/// Bigrades (k, 2d) with 0 <= 2d <= tw_max that carry nonzero symbols.
std::vector<std::pair<int, int>> strata_upto(int n, int tw_max);

/// Suite names: "actions", "lemmas", "casimir", "quantization", "all".
std::vector<std::string> suite_names();
bool is_suite_name(const std::string& s);

/// Run one suite (or "all") and return per-identity results.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt);

/// True when every non-informational check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace spoquant
