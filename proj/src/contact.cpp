#include "spoquant/contact.hpp"

#include <bit>

namespace spoquant {

SuperPoly VField::apply(const SuperPoly& h) const {
  SuperPoly r = f * h.dx();
  for (int i = 1; i <= n(); ++i) r += g[static_cast<std::size_t>(i - 1)] * h.dtheta(i);
  return r;
}

int VField::parity_or_throw() const {
  int p = -1;  // unknown
  auto feed = [&](const SuperPoly& c, int shift) {
    if (c.is_zero()) return;
    int cp = (c.parity_or_throw() + shift) & 1;
    if (p == -1)
      p = cp;
    else if (p != cp)
      throw DomainError("mixed-parity vector field where homogeneous required");
  };
  feed(f, 0);
  for (const auto& gi : g) feed(gi, 1);  // dtheta_i is odd
  return p == -1 ? 0 : p;
}

VField hamiltonian_field(const SuperPoly& f) {
  const int n = f.n();
  int p = f.parity_or_throw();
  VField X(n);
  X.f = f;
  Rational half(1, 2);
  Rational sgn = (p == 1) ? Rational(1) : Rational(-1);  // -(-1)^{p(f)}
  for (int i = 1; i <= n; ++i) {
    SuperPoly di = f.dbar(i);
    // Dbar_i = dtheta_i - theta_i d/dx: the dtheta part lands in g[i-1],
    // the theta_i d/dx part folds into the d/dx coefficient.
    X.g[static_cast<std::size_t>(i - 1)] = (sgn * half) * di;
    X.f += (sgn * half) * (di * (-SuperPoly::theta(n, i)));
  }
  return X;
}

SuperPoly lagrange(const SuperPoly& f, const SuperPoly& g) {
  if (f.n() != g.n()) throw DomainError("mixed n in lagrange bracket");
  int p = f.parity_or_throw();
  SuperPoly r = f * g.dx() - f.dx() * g;
  Rational w = (p == 1) ? Rational(1, 2) : Rational(-1, 2);  // -(-1)^{p(f)}/2
  for (int i = 1; i <= f.n(); ++i) r += w * (f.dbar(i) * g.dbar(i));
  return r;
}

VField vf_bracket(const VField& X, const VField& Y) {
  if (X.n() != Y.n()) throw DomainError("mixed n in vector-field bracket");
  bool flip = (X.parity_or_throw() & Y.parity_or_throw()) != 0;
  const int n = X.n();
  // [X,Y](y^j) = X(Y(y^j)) - (-1)^{p(X)p(Y)} Y(X(y^j)) on coordinates y^j.
  VField R(n);
  auto commute = [&](const SuperPoly& xc, const SuperPoly& yc) {
    return flip ? X.apply(yc) + Y.apply(xc) : X.apply(yc) - Y.apply(xc);
  };
  R.f = commute(X.f, Y.f);
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    R.g[idx] = commute(X.g[idx], Y.g[idx]);
  }
  return R;
}

SuperPoly density_action(const SuperPoly& f, const Weight& lambda, const SuperPoly& g) {
  if (lambda.flavor != WeightFlavor::Contact)
    throw DomainError("density_action requires a contact weight");
  VField X = hamiltonian_field(f);
  SuperPoly fp = f.dx();
  return X.apply(g) + Rational(lambda.value) * (fp * g);
}

SuperPoly vf_div(const VField& X) {
  const int n = X.n();
  SuperPoly r = X.f.dx();
  for (int i = 1; i <= n; ++i) {
    const SuperPoly& gi = X.g[static_cast<std::size_t>(i - 1)];
    // termwise (-1)^{p term} dtheta_i
    r += gi.even_part().dtheta(i);
    r -= gi.odd_part().dtheta(i);
  }
  return r;
}

SuperPoly ber_action(const VField& X, const Weight& lambda, const SuperPoly& g) {
  if (lambda.flavor != WeightFlavor::Berezinian)
    throw DomainError("ber_action requires a berezinian weight");
  X.parity_or_throw();
  return X.apply(g) + lambda.value * (vf_div(X) * g);
}

Weight phi_iso_weight(const Weight& lambda, int n) {
  if (lambda.flavor != WeightFlavor::Contact)
    throw DomainError("phi_iso_weight takes a contact weight");
  int m = 1 - n;
  if (m + 1 == 0) throw DomainError("phi isomorphism undefined at n = 2 (m = -1)");
  return berezinian_weight(lambda.value * Rational(2) / Rational(m + 1));
}

std::vector<SpoTriple> spo_basis(int n) {
  std::vector<SpoTriple> b;
  SuperPoly one = SuperPoly::constant(n, 1);
  SuperPoly X = SuperPoly::x(n);
  SuperPoly X2 = SuperPoly::x(n, 2);
  Rational mhalf(-1, 2);
  // K-dual pairs: 1 <-> -x^2/2, x <-> x, x^2 <-> -1/2,
  // theta_i <-> -x theta_i, x theta_i <-> theta_i, theta_i theta_j <-> itself.
  b.push_back({one, X2, mhalf});
  b.push_back({X, X, Rational(1)});
  b.push_back({X2, one, mhalf});
  for (int i = 1; i <= n; ++i) {
    SuperPoly th = SuperPoly::theta(n, i);
    SuperPoly xth = X * th;
    b.push_back({th, xth, Rational(-1)});
    b.push_back({xth, th, Rational(1)});
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      b.push_back({SuperPoly::theta(n, i) * SuperPoly::theta(n, j),
                   SuperPoly::theta(n, i) * SuperPoly::theta(n, j), Rational(1)});
  return b;
}

}  // namespace spoquant
