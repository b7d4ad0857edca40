#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "spoquant/contact.hpp"
#include "spoquant/halfint.hpp"
#include "spoquant/superpoly.hpp"

namespace spoquant {

/// Pure derivative word d/dx^c Gen_{k1}...Gen_{km}, generators listed by the
/// set bits of `km` in increasing index order. Gen is Dbar_i in the
/// contact normal form and dtheta_i in the canonical basis.
struct OpKey {
  int c = 0;
  std::uint32_t km = 0;
  friend auto operator<=>(const OpKey&, const OpKey&) = default;
};

using OpTerms = std::map<OpKey, SuperPoly>;

enum class OpBasis { Dbar, Dtheta };

namespace detail {

/// Accumulates coeff at key, pruning zeros.
void ot_add(OpTerms& t, const OpKey& key, const SuperPoly& coeff);

/// apply of a term map to a superfunction (rightmost generator acts first).
SuperPoly ot_apply(int n, OpBasis basis, const OpTerms& t, const SuperPoly& g);

/// Full normal-form composition a o b, pushing b's coefficients left through
/// a's derivative words with Koszul signs, rewriting Gen_i Gen_i
/// (Dbar_i^2 = -d/dx, dtheta_i^2 = 0) and sorting generators.
OpTerms ot_compose(int n, OpBasis basis, const OpTerms& a, const OpTerms& b);

}  // namespace detail

/// Differential operator from lambda-densities to mu-densities in contact
/// normal form: sum_{c,K} A_{cK} d/dx^c Dbar^K with coefficients on the left,
/// Dbar factors in increasing index order and no repeated Dbar_i.
class DiffOp {
 public:
  DiffOp(int n, Weight lam, Weight mu)
      : n_(n), lam_(std::move(lam)), mu_(std::move(mu)) {
    if (n < 1 || n > kMaxOddGenerators) throw DomainError("n out of range");
  }

  int n() const { return n_; }
  const Weight& lam() const { return lam_; }
  const Weight& mu() const { return mu_; }
  const OpTerms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(int c, std::uint32_t km, const SuperPoly& coeff) {
    if (c < 0) throw DomainError("negative d/dx exponent");
    if (km >> n_) throw DomainError("Dbar index exceeds n");
    if (coeff.n() != n_) throw DomainError("mixed n in operator term");
    detail::ot_add(t_, OpKey{c, km}, coeff);
  }

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(const Rational& s, const DiffOp& d);
  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    return a.n_ == b.n_ && a.lam_ == b.lam_ && a.mu_ == b.mu_ && a.t_ == b.t_;
  }

  /// Evaluates the operator on a superfunction (density representative).
  SuperPoly apply(const SuperPoly& g) const {
    return detail::ot_apply(n_, OpBasis::Dbar, t_, g);
  }

  /// a.compose(b) = a o b; requires b.mu == a.lam. apply agrees with
  /// apply(a, apply(b, g)).
  static DiffOp compose(const DiffOp& a, const DiffOp& b);

  /// Parity of a homogeneous operator (term parity = p(A) + |K| mod 2).
  int parity_or_throw() const;

  /// (order, Heisenberg order): k = max(c+|K|), d = max(c+|K|/2).
  /// Throws on the zero operator.
  Bigrade orders() const;

 private:
  int n_;
  Weight lam_, mu_;
  OpTerms t_;
};

/// Operator written in the canonical derivative basis:
/// sum A_{cJ} d/dx^c dtheta^J, coefficients on the left.
class CanonicalOp {
 public:
  CanonicalOp(int n, Weight lam, Weight mu)
      : n_(n), lam_(std::move(lam)), mu_(std::move(mu)) {
    if (n < 1 || n > kMaxOddGenerators) throw DomainError("n out of range");
  }

  int n() const { return n_; }
  const Weight& lam() const { return lam_; }
  const Weight& mu() const { return mu_; }
  const OpTerms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(int c, std::uint32_t jm, const SuperPoly& coeff) {
    if (c < 0) throw DomainError("negative d/dx exponent");
    if (jm >> n_) throw DomainError("dtheta index exceeds n");
    if (coeff.n() != n_) throw DomainError("mixed n in operator term");
    detail::ot_add(t_, OpKey{c, jm}, coeff);
  }

  SuperPoly apply(const SuperPoly& g) const {
    return detail::ot_apply(n_, OpBasis::Dtheta, t_, g);
  }

  friend bool operator==(const CanonicalOp& a, const CanonicalOp& b) {
    return a.n_ == b.n_ && a.lam_ == b.lam_ && a.mu_ == b.mu_ && a.t_ == b.t_;
  }

 private:
  int n_;
  Weight lam_, mu_;
  OpTerms t_;
};

/// Rewrites Dbar_i = dtheta_i - theta_i d/dx into the canonical basis.
CanonicalOp to_canonical_basis(const DiffOp& d);

/// Rewrites dtheta_i = Dbar_i + theta_i d/dx back into contact normal form.
DiffOp from_canonical_basis(const CanonicalOp& d);

/// L^lambda_{X_f} = X_f + lambda f' as an operator on lambda-densities.
DiffOp density_op(const SuperPoly& f, const Weight& lam);

/// Lie derivative of an operator along the Hamiltonian field of f:
/// L^mu_{X_f} o D - (-1)^{p(f)p(D)} D o L^lambda_{X_f}.
/// Preserves the order filtration; for contact f also the Heisenberg one.
DiffOp lie_derivative(const SuperPoly& f, const DiffOp& d);

}  // namespace spoquant
