#pragma once

#include <string>
#include <vector>

#include "spoquant/finesym.hpp"

namespace spoquant {

/// Casimir eigenvalue on the fine stratum (k,d), superdimension m:
/// k^2 + 2(d^2-kd) + (k-d)(m-2 delta) + (1/2)(2d-k)(m+1-4 delta)
/// + (1/2) delta (2 delta - m - 1).
Rational alpha(int k, HalfInt d, int m, const Rational& delta);

/// Stratum-normalizing map from Heisenberg symbols to classical symbols:
/// per bigrade (k,d) component, sum_a C_a Delta^a with C_0 = 1 and
/// C_a = C_{a-1} / (2a (c - delta - (a-1)/2)), c = 2d-k. The sum is finite
/// because Delta raises the moment degree. Throws CriticalValueError
/// ("I_delta", witness c, j) when a needed denominator vanishes.
FSym sq_map(const FSym& s);

/// Coefficients of the projectively equivariant quantization in contact
/// weights: C_{k,0} = 1 and
/// C_{k,r} = prod_{j=1..r}(2 lam + k - j) / (r! prod_{j=1..r}(m + 2k - j - 2 delta)).
/// Throws CriticalValueError ("C_prime", witness k, j) on a zero denominator.
Rational c_kr(int k, int r, const Rational& lam, const Rational& delta, int m);

/// Projectively equivariant quantization of classical symbols:
/// per homogeneous degree k, sum_r C_{k,r} q_aff(div_symbol^r S).
/// Contact-flavor input is converted to canonical moments first.
/// Denominators are only consumed for r with div_symbol^r S != 0.
DiffOp q_sl(const FSym& s, const Weight& lam, const Weight& mu);

/// The fine equivariant quantization: q_sl of the canonical rewriting of
/// sq_map(S). Heisenberg-normalized: h_symbol(quantize(S), d) = S on each
/// level-d component.
DiffOp quantize(const FSym& s, const Weight& lam, const Weight& mu);

/// Casimir operators of spo(2|n): sum over K-dual basis pairs of composed
/// actions, with the dual-basis scalars folded in.
FSym casimir_fine(const FSym& s);             // via act_fine
FSym casimir_classical(const FSym& s);        // via act_classical
DiffOp casimir_operators(const DiffOp& dop);  // via lie_derivative

/// Affine-invariant difference between the operator Casimir and the
/// classical-symbol Casimir, per homogeneous classical degree k:
/// ((2 lam + k - 1)/2) (2 Div_C + Div_T). Throws on mixed degrees.
FSym n_sd(const FSym& s, const Rational& lam);

/// Same, extended by linearity over degree components.
FSym n_sd_graded(const FSym& s, const Rational& lam);

/// Difference between the operator Casimir and the fine Casimir, per
/// bigrade component: (1/2) Delta + n_sd.
FSym n_pd_graded(const FSym& s, const Rational& lam);

/// One membership witness: delta lies in `set` via these parameters.
struct CriticalHit {
  std::string set;  // "I_delta" | "C_prime" | "C_crit"
  Rational delta;
  std::vector<WitnessEntry> witness;
};

struct CriticalReport {
  Rational delta;
  std::vector<CriticalHit> hits;
  bool is_critical() const { return !hits.empty(); }
};

/// Membership report: every witness within the bounds whose defining
/// formula reproduces delta. I_delta ranges over 0 <= c <= floor(d_max),
/// 0 <= j <= 2 d_max - 1; C_prime over 1 <= k <= k_max, 1 <= i <= k;
/// C_crit over valid stratum pairs with d' < d <= d_max, k, k' <= k_max.
CriticalReport critical_report(const Rational& delta, int n, int k_max, HalfInt d_max);

/// Full enumeration of the three sets within the same bounds, sorted by
/// value; one entry per witness.
std::vector<CriticalHit> enumerate_critical_values(int n, int k_max, HalfInt d_max);

/// The uniqueness construction: extends a bigrade-homogeneous S to the
/// unique eigenvector S-hat of C^Sigma + N_PD with eigenvalue alpha_{k,d}
/// by solving the triangular system stratum by stratum in decreasing
/// (k'+d'), then applies the affine quantization. Equals quantize(S) at
/// non-critical delta. Throws SingularSystemError with witness
/// (k, d, k', d') when a reachable stratum collides.
DiffOp quantize_via_casimir(const FSym& s, const Weight& lam, const Weight& mu);

}  // namespace spoquant
