#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "spoquant/diffop.hpp"
#include "spoquant/halfint.hpp"
#include "spoquant/superpoly.hpp"

namespace spoquant {

/// Which odd moment coordinates a symbol is written in: Contact symbols use
/// gamma_i (adapted to the contact splitting), Canonical symbols use
/// eta_i = gamma_i + theta_i zeta (moments of the coordinate derivatives).
enum class SymFlavor { Contact, Canonical };

/// Monomial key x^xe zeta^ze theta_I m_J, where the odd mask packs theta_i
/// at bit i-1 and the moment m_i (gamma_i or eta_i) at bit n+i-1. Canonical
/// word order lists thetas first then moments, each by increasing index,
/// which is exactly increasing bit order.
struct FKey {
  int xe = 0;
  int ze = 0;
  std::uint32_t odd = 0;
  friend auto operator<=>(const FKey&, const FKey&) = default;
};

/// Polynomial fine symbol: element of F_delta (x) Q[zeta] (x) Lambda(moments),
/// with superfunction coefficients. The weight delta of the underlying
/// density module is carried along and adds under multiplication.
class FSym {
 public:
  FSym(int n, SymFlavor flavor, Rational delta)
      : n_(check_n(n)), flavor_(flavor), delta_(std::move(delta)) {}

  static FSym zero(int n, SymFlavor fl, const Rational& delta) { return FSym(n, fl, delta); }
  static FSym monomial(int n, SymFlavor fl, const Rational& delta, int xe, int ze,
                       std::uint32_t odd, const Rational& c) {
    FSym s(n, fl, delta);
    if (xe < 0 || ze < 0) throw DomainError("negative exponent in symbol monomial");
    if (odd >> (2 * n)) throw DomainError("generator index exceeds n");
    s.add_term(xe, ze, odd, c);
    return s;
  }
  static FSym from_superpoly(const SuperPoly& f, SymFlavor fl, const Rational& delta) {
    FSym s(f.n(), fl, delta);
    for (const auto& [k, c] : f.terms()) s.add_term(k.xe, 0, k.odd, c);
    return s;
  }

  int n() const { return n_; }
  SymFlavor flavor() const { return flavor_; }
  const Rational& delta() const { return delta_; }
  const std::map<FKey, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  std::uint32_t theta_bit(int i) const { return 1u << check_idx(i, "theta"); }
  std::uint32_t moment_bit(int i) const { return 1u << (n_ + check_idx(i, "moment")); }

  void add_term(int xe, int ze, std::uint32_t odd, const Rational& c);

  FSym& operator+=(const FSym& o);
  FSym& operator-=(const FSym& o);
  friend FSym operator+(FSym a, const FSym& b) { return a += b; }
  friend FSym operator-(FSym a, const FSym& b) { return a -= b; }
  FSym operator-() const;
  friend FSym operator*(const FSym& a, const FSym& b);
  friend FSym operator*(const Rational& s, const FSym& a);
  friend bool operator==(const FSym& a, const FSym& b) {
    return a.n_ == b.n_ && a.flavor_ == b.flavor_ && a.t_ == b.t_ &&
           (a.t_.empty() || a.delta_ == b.delta_);
  }

  std::optional<int> parity() const;
  int parity_or_throw() const;

  FSym ddx() const;          // d/dx on coefficients
  FSym ddz() const;          // d/dzeta
  FSym dtheta(int i) const;  // left derivative
  FSym dmoment(int i) const; // left derivative w.r.t. gamma_i / eta_i
  FSym theta_mul(int i) const;
  FSym moment_mul(int i) const;
  FSym x_mul() const;
  FSym z_mul() const;
  FSym euler_z() const;  // zeta d/dzeta

  /// Dbar_i acting on the superfunction coefficients (moments inert).
  FSym dbar_coeff(int i) const { return dtheta(i) - ddx().theta_mul(i); }

  /// Classical degree of a monomial key: zeta-degree + moment-degree.
  int term_k(const FKey& k) const { return k.ze + mom_count(k.odd); }
  /// Twice the Heisenberg degree of a monomial key.
  int term_2d(const FKey& k) const { return 2 * k.ze + mom_count(k.odd); }

  /// Bigrade, when all terms share one; nullopt for zero or mixed symbols.
  std::optional<Bigrade> homogeneous_bigrade() const;
  /// Classical degree, when all terms share one.
  std::optional<int> homogeneous_degree() const;

  /// Terms of one bigrade (k given as (k, 2d)).
  FSym bigrade_component(int k, int tw) const;
  /// Terms of one classical degree.
  FSym degree_component(int k) const;
  /// Distinct (k, 2d) pairs present.
  std::map<std::pair<int, int>, FSym> bigrade_components() const;
  std::map<int, FSym> degree_components() const;

  int mom_count(std::uint32_t odd) const { return std::popcount(odd >> n_); }

 private:
  static int check_n(int n) {
    if (n < 1 || n > kMaxOddGenerators) throw DomainError("n out of range");
    return n;
  }
  int check_idx(int i, const char* what) const {
    if (i < 1 || i > n_) throw DomainError(std::string(what) + " index exceeds n");
    return i - 1;
  }

  int n_;
  SymFlavor flavor_;
  Rational delta_;
  std::map<FKey, Rational> t_;
};

/// --- symbol calculus -------------------------------------------------------

/// Fine action of the Hamiltonian field of f on a contact fine symbol
/// (closed form):
///   L(S) = f dx(S) + f' (delta - zeta dzeta)(S)
///          - (1/2)(-1)^{p(f)} sum_i Dbar_i(f) Dbar_i(S)
///          + (1/2) sum_{j,k} Dbar_j Dbar_k(f) gamma_k dgamma_j(S).
FSym act_fine(const SuperPoly& f, const FSym& s);

/// Same action computed from the definition: lift through the canonical
/// section A zeta^c gamma^K -> A d/dx^c Dbar^K, take the operator Lie
/// derivative with lower weight lam, and project back to the source bigrade.
FSym act_fine_definitional(const SuperPoly& f, const FSym& s, const Weight& lam);

/// Classical (Heisenberg-graded) action on contact symbols:
/// act_fine + (1/2)(-1)^{p(f)} sum_i Dbar_i(f') gamma_i dzeta(S).
FSym act_classical(const SuperPoly& f, const FSym& s);

/// Lowering operator Delta(S) = sum_i gamma_i Dbar_i dzeta(S);
/// maps bigrade (k,d) into (k,d-1/2).
FSym delta_op(const FSym& s);

/// Even divergence dx dzeta(S): bigrade (k,d) -> (k-1,d-1).
FSym div_c(const FSym& s);

/// Odd divergence sum_r Dbar_r dgamma_r(S): bigrade (k,d) -> (k-1,d-1/2).
FSym div_t(const FSym& s);

/// Moment substitutions gamma_i = eta_i - theta_i zeta and back.
FSym to_canonical(const FSym& s);
FSym to_contact(const FSym& s);

/// Interior product with the j-th dual frame covector. On canonical symbols
/// j = 1 is dzeta and j = k+1 is -(1/2) deta_k; contact symbols are routed
/// through the moment substitution and back.
FSym interior(int j, const FSym& s);

/// Divergence of canonical symbols:
/// dx dzeta(S) + sum_k dtheta_k deta_k(S). Commutes with the affine
/// action and drives the equivariant quantization correction terms.
FSym div_symbol(const FSym& s);

/// Affine quantization of canonical symbols: zeta^c eta^J -> d/dx^c dtheta^J
/// with the same left coefficient, then rewritten into contact normal form.
DiffOp q_aff(const FSym& s, const Weight& lam, const Weight& mu);

/// Total symbol of an operator in canonical moments (inverse of q_aff).
FSym sigma_aff(const DiffOp& d);

/// Equivariance defect of the affine quantization along the Hamiltonian
/// field of f: gamma(f)(S) = sigma_aff(L^{lam,mu}_{X_f}(q_aff(S))) minus the
/// classical action of f on S. Vanishes for f of degree <= 1 in the grading
/// (1, x, theta_i, theta_i theta_j); lowers degree by 1 for quadratic f.
FSym gamma_map(const SuperPoly& f, const Weight& lam, const Rational& delta, const FSym& s);

/// Fine symbol of an operator at a bigrade: the class of D in
/// D^{k,d}/(D^{k-1,d} + D^{k,d-1/2}). Requires orders(D) <= at componentwise.
FSym fine_symbol(const DiffOp& d, const Bigrade& at);

/// Heisenberg principal symbol at level d: all terms with c + |K|/2 = d.
FSym h_symbol(const DiffOp& d, HalfInt level);

/// Canonical section of the fine symbol map: monomial-wise lift
/// A zeta^c gamma^K -> A d/dx^c Dbar^K. Weights (lam, lam + delta(S)).
DiffOp lift_fine(const FSym& s, const Weight& lam);

}  // namespace spoquant
