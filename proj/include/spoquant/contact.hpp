#pragma once

#include <string>
#include <vector>

#include "spoquant/rational.hpp"
#include "spoquant/superpoly.hpp"

namespace spoquant {

/// Flavor of a density weight: Contact weights grade powers of the contact
/// form alpha; Berezinian weights grade powers of |Dx|.
enum class WeightFlavor { Contact, Berezinian };

struct Weight {
  Rational value;
  WeightFlavor flavor = WeightFlavor::Contact;

  friend bool operator==(const Weight&, const Weight&) = default;
  std::string str() const {
    return value.str() + (flavor == WeightFlavor::Contact ? " (contact)" : " (berezinian)");
  }
};

inline Weight contact_weight(const Rational& v) { return Weight{v, WeightFlavor::Contact}; }
inline Weight berezinian_weight(const Rational& v) { return Weight{v, WeightFlavor::Berezinian}; }

/// Polynomial vector field X = f d/dx + sum_i g[i-1] dtheta_i.
struct VField {
  SuperPoly f;
  std::vector<SuperPoly> g;

  explicit VField(int n) : f(SuperPoly::zero(n)), g(static_cast<std::size_t>(n), SuperPoly::zero(n)) {}
  int n() const { return f.n(); }

  SuperPoly apply(const SuperPoly& h) const;

  /// Parity of a homogeneous field (components g[i] carry parity p(X)+1);
  /// throws on mixed parity. The zero field counts even.
  int parity_or_throw() const;

  friend bool operator==(const VField&, const VField&) = default;
};

/// Contact Hamiltonian vector field of a parity-homogeneous Hamiltonian:
/// X_f = f d/dx - (-1)^{p(f)} (1/2) sum_i Dbar_i(f) Dbar_i.
VField hamiltonian_field(const SuperPoly& f);

/// Lagrange bracket {f,g} = f g' - f' g - (-1)^{p(f)} (1/2) sum_i Dbar_i(f) Dbar_i(g).
/// Satisfies [X_f, X_g] = X_{{f,g}}.
SuperPoly lagrange(const SuperPoly& f, const SuperPoly& g);

/// Super commutator of homogeneous vector fields.
VField vf_bracket(const VField& X, const VField& Y);

/// Action on contact densities of weight lambda: L_f(g) = X_f(g) + lambda f' g.
SuperPoly density_action(const SuperPoly& f, const Weight& lambda, const SuperPoly& g);

/// Divergence of a vector field: div(X) = f' + sum_i (-1)^{p(g^i)} dtheta_i(g^i),
/// evaluated termwise on each parity-homogeneous piece of g^i.
SuperPoly vf_div(const VField& X);

/// Action on Berezinian densities of weight lambda: X(g) + lambda div(X) g.
/// Requires X parity-homogeneous and a Berezinian-flavor weight.
SuperPoly ber_action(const VField& X, const Weight& lambda, const SuperPoly& g);

/// Weight side of the isomorphism g alpha^lambda -> g |Dx|^{2 lambda/(m+1)},
/// m = 1-n. Undefined at n = 2 (m+1 = 0).
Weight phi_iso_weight(const Weight& lambda, int n);

/// One member of the Hamiltonian basis together with its dual:
/// u = X_{ham}, u^* = scale * X_{dual} under the invariant pairing.
struct SpoTriple {
  SuperPoly ham;
  SuperPoly dual;
  Rational scale;
};

/// Hamiltonian basis of spo(2|n): {1, x, x^2, theta_i, x theta_i (i=1..n),
/// theta_i theta_j (i<j)}, each paired with its dual. Size 5 for n=1,
/// 3 + 2n + n(n-1)/2 in general.
std::vector<SpoTriple> spo_basis(int n);

}  // namespace spoquant
