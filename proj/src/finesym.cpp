#include "spoquant/finesym.hpp"

#include <bit>
#include <utility>
#include <vector>

#include "spoquant/grassmann.hpp"

namespace spoquant {

void FSym::add_term(int xe, int ze, std::uint32_t odd, const Rational& c) {
  if (c.is_zero()) return;
  FKey key{xe, ze, odd};
  auto it = t_.find(key);
  if (it == t_.end()) {
    t_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

static void check_compatible(const FSym& a, const FSym& b) {
  if (a.n() != b.n()) throw DomainError("mixed n in symbol arithmetic");
  if (a.flavor() != b.flavor()) throw DomainError("mixed symbol flavors");
}

FSym& FSym::operator+=(const FSym& o) {
  check_compatible(*this, o);
  if (!o.t_.empty()) {
    if (t_.empty())
      delta_ = o.delta_;
    else if (delta_ != o.delta_)
      throw DomainError("mixed weights in symbol sum");
  }
  for (const auto& [k, c] : o.t_) add_term(k.xe, k.ze, k.odd, c);
  return *this;
}

FSym& FSym::operator-=(const FSym& o) {
  check_compatible(*this, o);
  if (!o.t_.empty()) {
    if (t_.empty())
      delta_ = o.delta_;
    else if (delta_ != o.delta_)
      throw DomainError("mixed weights in symbol sum");
  }
  for (const auto& [k, c] : o.t_) add_term(k.xe, k.ze, k.odd, -c);
  return *this;
}

FSym FSym::operator-() const {
  FSym r(n_, flavor_, delta_);
  for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
  return r;
}

FSym operator*(const FSym& a, const FSym& b) {
  check_compatible(a, b);
  FSym r(a.n_, a.flavor_, a.delta_ + b.delta_);
  for (const auto& [ka, ca] : a.t_)
    for (const auto& [kb, cb] : b.t_) {
      if (ka.odd & kb.odd) continue;
      Rational c = ca * cb;
      if (concat_sign(ka.odd, kb.odd) < 0) c = -c;
      r.add_term(ka.xe + kb.xe, ka.ze + kb.ze, ka.odd | kb.odd, c);
    }
  return r;
}

FSym operator*(const Rational& s, const FSym& a) {
  FSym r(a.n_, a.flavor_, a.delta_);
  if (s.is_zero()) return r;
  for (const auto& [k, c] : a.t_) r.t_.emplace(k, s * c);
  return r;
}

std::optional<int> FSym::parity() const {
  std::optional<int> p;
  for (const auto& [k, c] : t_) {
    int tp = std::popcount(k.odd) & 1;
    if (!p)
      p = tp;
    else if (*p != tp)
      return std::nullopt;
  }
  if (!p) p = 0;
  return p;
}

int FSym::parity_or_throw() const {
  auto p = parity();
  if (!p) throw DomainError("symbol is not parity homogeneous");
  return *p;
}

FSym FSym::ddx() const {
  FSym r(n_, flavor_, delta_);
  for (const auto& [k, c] : t_) {
    if (k.xe == 0) continue;
    r.add_term(k.xe - 1, k.ze, k.odd, Rational(k.xe) * c);
  }
  return r;
}

FSym FSym::ddz() const {
  FSym r(n_, flavor_, delta_);
  for (const auto& [k, c] : t_) {
    if (k.ze == 0) continue;
    r.add_term(k.xe, k.ze - 1, k.odd, Rational(k.ze) * c);
  }
  return r;
}

FSym FSym::euler_z() const {
  FSym r(n_, flavor_, delta_);
  for (const auto& [k, c] : t_) {
    if (k.ze == 0) continue;
    r.add_term(k.xe, k.ze, k.odd, Rational(k.ze) * c);
  }
  return r;
}

static FSym odd_derive(const FSym& s, int bitpos) {
  FSym r(s.n(), s.flavor(), s.delta());
  std::uint32_t bit = 1u << bitpos;
  for (const auto& [k, c] : s.terms()) {
    if (!(k.odd & bit)) continue;
    Rational cc = c;
    if (left_derivative_sign(k.odd, bitpos) < 0) cc = -cc;
    r.add_term(k.xe, k.ze, k.odd & ~bit, cc);
  }
  return r;
}

static FSym odd_mul(const FSym& s, int bitpos) {
  FSym r(s.n(), s.flavor(), s.delta());
  std::uint32_t bit = 1u << bitpos;
  for (const auto& [k, c] : s.terms()) {
    if (k.odd & bit) continue;
    Rational cc = c;
    if (left_mul_sign(k.odd, bitpos) < 0) cc = -cc;
    r.add_term(k.xe, k.ze, k.odd | bit, cc);
  }
  return r;
}

FSym FSym::dtheta(int i) const { return odd_derive(*this, check_idx(i, "theta")); }
FSym FSym::dmoment(int i) const { return odd_derive(*this, n_ + check_idx(i, "moment")); }
FSym FSym::theta_mul(int i) const { return odd_mul(*this, check_idx(i, "theta")); }
FSym FSym::moment_mul(int i) const { return odd_mul(*this, n_ + check_idx(i, "moment")); }

FSym FSym::x_mul() const {
  FSym r(n_, flavor_, delta_);
  for (const auto& [k, c] : t_) r.t_.emplace(FKey{k.xe + 1, k.ze, k.odd}, c);
  return r;
}

FSym FSym::z_mul() const {
  FSym r(n_, flavor_, delta_);
  for (const auto& [k, c] : t_) r.t_.emplace(FKey{k.xe, k.ze + 1, k.odd}, c);
  return r;
}

std::optional<Bigrade> FSym::homogeneous_bigrade() const {
  std::optional<std::pair<int, int>> kd;
  for (const auto& [k, c] : t_) {
    std::pair<int, int> here{term_k(k), term_2d(k)};
    if (!kd)
      kd = here;
    else if (*kd != here)
      return std::nullopt;
  }
  if (!kd) return std::nullopt;
  return Bigrade(kd->first, HalfInt::of_twice(kd->second));
}

std::optional<int> FSym::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& [k, c] : t_) {
    int here = term_k(k);
    if (!deg)
      deg = here;
    else if (*deg != here)
      return std::nullopt;
  }
  return deg;
}

FSym FSym::bigrade_component(int k, int tw) const {
  FSym r(n_, flavor_, delta_);
  for (const auto& [key, c] : t_)
    if (term_k(key) == k && term_2d(key) == tw) r.t_.emplace(key, c);
  return r;
}

FSym FSym::degree_component(int k) const {
  FSym r(n_, flavor_, delta_);
  for (const auto& [key, c] : t_)
    if (term_k(key) == k) r.t_.emplace(key, c);
  return r;
}

std::map<std::pair<int, int>, FSym> FSym::bigrade_components() const {
  std::map<std::pair<int, int>, FSym> out;
  for (const auto& [key, c] : t_) {
    std::pair<int, int> kd{term_k(key), term_2d(key)};
    auto it = out.find(kd);
    if (it == out.end()) it = out.emplace(kd, FSym(n_, flavor_, delta_)).first;
    it->second.add_term(key.xe, key.ze, key.odd, c);
  }
  return out;
}

std::map<int, FSym> FSym::degree_components() const {
  std::map<int, FSym> out;
  for (const auto& [key, c] : t_) {
    int k = term_k(key);
    auto it = out.find(k);
    if (it == out.end()) it = out.emplace(k, FSym(n_, flavor_, delta_)).first;
    it->second.add_term(key.xe, key.ze, key.odd, c);
  }
  return out;
}

/// --- actions ---------------------------------------------------------------

static FSym embed(const SuperPoly& f, const FSym& like) {
  return FSym::from_superpoly(f, like.flavor(), Rational(0));
}

static void require_contact(const FSym& s, const char* who) {
  if (s.flavor() != SymFlavor::Contact)
    throw DomainError(std::string(who) + " expects a contact-moment symbol");
}

static void require_canonical(const FSym& s, const char* who) {
  if (s.flavor() != SymFlavor::Canonical)
    throw DomainError(std::string(who) + " expects a canonical-moment symbol");
}

FSym act_fine(const SuperPoly& f, const FSym& s) {
  require_contact(s, "act_fine");
  if (f.n() != s.n()) throw DomainError("mixed n in act_fine");
  int n = s.n();
  int p = f.parity_or_throw();
  Rational w = (p & 1) ? Rational(1, 2) : Rational(-1, 2);

  SuperPoly fp = f.dx();
  FSym r = embed(f, s) * s.ddx();
  r += embed(fp, s) * (s.delta() * s - s.euler_z());
  for (int i = 1; i <= n; ++i) {
    SuperPoly di = f.dbar(i);
    if (di.is_zero()) continue;
    r += w * (embed(di, s) * s.dbar_coeff(i));
  }
  for (int j = 1; j <= n; ++j) {
    FSym dj = s.dmoment(j);
    if (dj.is_zero()) continue;
    for (int k = 1; k <= n; ++k) {
      SuperPoly djk = f.dbar(k).dbar(j);  // Dbar_j Dbar_k (f)
      if (djk.is_zero()) continue;
      r += Rational(1, 2) * (embed(djk, s) * dj.moment_mul(k));
    }
  }
  return r;
}

FSym act_classical(const SuperPoly& f, const FSym& s) {
  require_contact(s, "act_classical");
  FSym r = act_fine(f, s);
  int n = s.n();
  int p = f.parity_or_throw();
  Rational w = (p & 1) ? Rational(-1, 2) : Rational(1, 2);
  SuperPoly fp = f.dx();
  FSym dz = s.ddz();
  if (dz.is_zero()) return r;
  for (int i = 1; i <= n; ++i) {
    SuperPoly di = fp.dbar(i);
    if (di.is_zero()) continue;
    r += w * (embed(di, s) * dz.moment_mul(i));
  }
  return r;
}

FSym delta_op(const FSym& s) {
  require_contact(s, "delta_op");
  FSym r(s.n(), s.flavor(), s.delta());
  FSym dz = s.ddz();
  for (int i = 1; i <= s.n(); ++i) r += dz.dbar_coeff(i).moment_mul(i);
  return r;
}

FSym div_c(const FSym& s) {
  require_contact(s, "div_c");
  return s.ddz().ddx();
}

FSym div_t(const FSym& s) {
  require_contact(s, "div_t");
  FSym r(s.n(), s.flavor(), s.delta());
  for (int i = 1; i <= s.n(); ++i) r += s.dmoment(i).dbar_coeff(i);
  return r;
}

/// Substitutes each moment generator through `factor(j)`, preserving the
/// word order theta_I m_{j1} m_{j2} ... of every monomial.
template <typename FactorFn>
static FSym substitute_moments(const FSym& s, SymFlavor to, FactorFn factor) {
  int n = s.n();
  FSym out(n, to, s.delta());
  std::uint32_t low = (1u << n) - 1u;
  for (const auto& [k, c] : s.terms()) {
    FSym acc = FSym::monomial(n, to, Rational(0), k.xe, k.ze, k.odd & low, c);
    std::uint32_t moms = k.odd >> n;
    while (moms) {
      int j = std::countr_zero(moms) + 1;
      moms &= moms - 1;
      acc = acc * factor(j);
    }
    // restore the module weight lost to the zero-delta factors
    FSym shaped(n, to, s.delta());
    for (const auto& [kk, cc] : acc.terms()) shaped.add_term(kk.xe, kk.ze, kk.odd, cc);
    out += shaped;
  }
  return out;
}

FSym to_canonical(const FSym& s) {
  if (s.flavor() == SymFlavor::Canonical) return s;
  int n = s.n();
  // gamma_j = eta_j - theta_j zeta
  return substitute_moments(s, SymFlavor::Canonical, [n](int j) {
    FSym eta = FSym::monomial(n, SymFlavor::Canonical, Rational(0), 0, 0, 1u << (n + j - 1), Rational(1));
    FSym tz = FSym::monomial(n, SymFlavor::Canonical, Rational(0), 0, 1, 1u << (j - 1), Rational(1));
    return eta - tz;
  });
}

FSym to_contact(const FSym& s) {
  if (s.flavor() == SymFlavor::Contact) return s;
  int n = s.n();
  // eta_j = gamma_j + theta_j zeta
  return substitute_moments(s, SymFlavor::Contact, [n](int j) {
    FSym gam = FSym::monomial(n, SymFlavor::Contact, Rational(0), 0, 0, 1u << (n + j - 1), Rational(1));
    FSym tz = FSym::monomial(n, SymFlavor::Contact, Rational(0), 0, 1, 1u << (j - 1), Rational(1));
    return gam + tz;
  });
}

FSym interior(int j, const FSym& s) {
  if (s.flavor() == SymFlavor::Contact) return to_contact(interior(j, to_canonical(s)));
  if (j == 1) return s.ddz();
  if (j >= 2 && j <= s.n() + 1) return Rational(-1, 2) * s.dmoment(j - 1);
  throw DomainError("interior index out of range");
}

FSym div_symbol(const FSym& s) {
  // Divergence lowering the classical degree by one: contraction of each
  // base derivative with its dual moment, dx dzeta + sum_r dtheta_r deta_r.
  require_canonical(s, "div_symbol");
  FSym r = s.ddx().ddz();
  for (int k = 1; k <= s.n(); ++k) r += s.dmoment(k).dtheta(k);
  return r;
}

DiffOp q_aff(const FSym& s, const Weight& lam, const Weight& mu) {
  require_canonical(s, "q_aff");
  if (lam.flavor != WeightFlavor::Contact || mu.flavor != WeightFlavor::Contact)
    throw DomainError("q_aff expects contact weights");
  if (mu.value - lam.value != s.delta() && !s.is_zero())
    throw DomainError("symbol weight does not match operator weights");
  int n = s.n();
  std::uint32_t low = (1u << n) - 1u;
  CanonicalOp cop(n, lam, mu);
  for (const auto& [k, c] : s.terms())
    cop.add_term(k.ze, k.odd >> n, SuperPoly::monomial(n, k.xe, k.odd & low, c));
  return from_canonical_basis(cop);
}

FSym sigma_aff(const DiffOp& d) {
  CanonicalOp cop = to_canonical_basis(d);
  FSym r(d.n(), SymFlavor::Canonical, d.mu().value - d.lam().value);
  for (const auto& [key, coeff] : cop.terms())
    for (const auto& [sk, c] : coeff.terms())
      r.add_term(sk.xe, key.c, sk.odd | (key.km << d.n()), c);
  return r;
}

FSym gamma_map(const SuperPoly& f, const Weight& lam, const Rational& delta, const FSym& s) {
  require_canonical(s, "gamma_map");
  if (lam.flavor != WeightFlavor::Contact) throw DomainError("gamma_map expects a contact weight");
  Weight mu = contact_weight(lam.value + delta);
  FSym shaped(s.n(), SymFlavor::Canonical, delta);
  for (const auto& [k, c] : s.terms()) shaped.add_term(k.xe, k.ze, k.odd, c);
  FSym lifted = sigma_aff(lie_derivative(f, q_aff(shaped, lam, mu)));
  FSym classical = to_canonical(act_classical(f, to_contact(shaped)));
  return lifted - classical;
}

FSym fine_symbol(const DiffOp& d, const Bigrade& at) {
  FSym r(d.n(), SymFlavor::Contact, d.mu().value - d.lam().value);
  for (const auto& [key, coeff] : d.terms()) {
    int k = key.c + std::popcount(key.km);
    int tw = 2 * key.c + std::popcount(key.km);
    if (k > at.k || tw > at.d.tw)
      throw DomainError("operator exceeds bigrade " + at.str());
    if (k == at.k && tw == at.d.tw)
      for (const auto& [sk, c] : coeff.terms())
        r.add_term(sk.xe, key.c, sk.odd | (key.km << d.n()), c);
  }
  return r;
}

FSym h_symbol(const DiffOp& d, HalfInt level) {
  FSym r(d.n(), SymFlavor::Contact, d.mu().value - d.lam().value);
  for (const auto& [key, coeff] : d.terms()) {
    int tw = 2 * key.c + std::popcount(key.km);
    if (tw != level.tw) continue;
    for (const auto& [sk, c] : coeff.terms())
      r.add_term(sk.xe, key.c, sk.odd | (key.km << d.n()), c);
  }
  return r;
}

DiffOp lift_fine(const FSym& s, const Weight& lam) {
  require_contact(s, "lift_fine");
  int n = s.n();
  std::uint32_t low = (1u << n) - 1u;
  DiffOp d(n, lam, Weight{lam.value + s.delta(), lam.flavor});
  for (const auto& [k, c] : s.terms())
    d.add_term(k.ze, k.odd >> n, SuperPoly::monomial(n, k.xe, k.odd & low, c));
  return d;
}

FSym act_fine_definitional(const SuperPoly& f, const FSym& s, const Weight& lam) {
  require_contact(s, "act_fine_definitional");
  FSym r(s.n(), SymFlavor::Contact, s.delta());
  for (const auto& [kd, comp] : s.bigrade_components()) {
    DiffOp lifted = lift_fine(comp, lam);
    DiffOp moved = lie_derivative(f, lifted);
    r += fine_symbol(moved, Bigrade(kd.first, HalfInt::of_twice(kd.second)));
  }
  return r;
}

}  // namespace spoquant
