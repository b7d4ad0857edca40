#include "spoquant/diffop.hpp"

#include <bit>
#include <optional>
#include <utility>
#include <vector>

namespace spoquant {
namespace detail {

void ot_add(OpTerms& t, const OpKey& key, const SuperPoly& coeff) {
  if (coeff.is_zero()) return;
  auto it = t.find(key);
  if (it == t.end()) {
    t.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) t.erase(it);
  }
}

namespace {

SuperPoly gen_derive(OpBasis basis, int i, const SuperPoly& f) {
  return basis == OpBasis::Dbar ? f.dbar(i) : f.dtheta(i);
}

struct WordTerm {
  OpKey key;
  int sign;
};

/// Word times a single generator on the right: Gen^K Gen_j.
std::optional<WordTerm> word_append_gen(OpBasis basis, OpKey key, int j) {
  std::uint32_t bit = 1u << j;
  int above = std::popcount(key.km >> (j + 1));
  if (!(key.km & bit)) {
    key.km |= bit;
    return WordTerm{key, (above & 1) ? -1 : +1};
  }
  if (basis == OpBasis::Dtheta) return std::nullopt;  // dtheta_j^2 = 0
  // Dbar_j^2 = -d/dx after moving the right factor across `above` generators.
  key.km &= ~bit;
  key.c += 1;
  return WordTerm{key, (above & 1) ? +1 : -1};
}

/// Word times a single generator on the left: Gen_j Gen^K (d/dx part of the
/// word commutes with generators).
std::optional<WordTerm> word_prepend_gen(OpBasis basis, OpKey key, int j) {
  std::uint32_t bit = 1u << j;
  int below = std::popcount(key.km & (bit - 1u));
  if (!(key.km & bit)) {
    key.km |= bit;
    return WordTerm{key, (below & 1) ? -1 : +1};
  }
  if (basis == OpBasis::Dtheta) return std::nullopt;
  key.km &= ~bit;
  key.c += 1;
  return WordTerm{key, (below & 1) ? +1 : -1};
}

/// Product of two pure words; at most one normal-form word results.
std::optional<WordTerm> word_mul(OpBasis basis, OpKey a, const OpKey& b) {
  WordTerm acc{OpKey{a.c + b.c, a.km}, +1};
  std::uint32_t rest = b.km;
  while (rest) {
    int j = std::countr_zero(rest);
    rest &= rest - 1;
    auto step = word_append_gen(basis, acc.key, j);
    if (!step) return std::nullopt;
    acc.key = step->key;
    acc.sign *= step->sign;
  }
  return acc;
}

/// d/dx^c Gen^K o (B .) as sum C * word, for parity-homogeneous B.
/// Requires the Leibniz rule Gen_i(B h) = Gen_i(B) h + (-1)^{p(B)} B Gen_i(h).
std::vector<std::pair<SuperPoly, OpKey>> push_coeff_left(int n, OpBasis basis,
                                                         const OpKey& word,
                                                         const SuperPoly& b) {
  // State keyed by (word, coefficient parity) so the Koszul sign of the next
  // step stays well defined when different paths merge.
  std::map<std::pair<OpKey, int>, SuperPoly> cur;
  if (!b.is_zero()) cur.emplace(std::make_pair(OpKey{0, 0}, b.parity_or_throw()), b);

  // Generators of the word act right to left: largest index first.
  std::uint32_t rest = word.km;
  std::vector<int> bits;
  while (rest) {
    bits.push_back(std::countr_zero(rest));
    rest &= rest - 1;
  }
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    int j = *it;
    std::map<std::pair<OpKey, int>, SuperPoly> next;
    auto acc = [&](const OpKey& key, int par, const SuperPoly& c) {
      if (c.is_zero()) return;
      auto k = std::make_pair(key, par);
      auto f = next.find(k);
      if (f == next.end()) {
        next.emplace(k, c);
      } else {
        f->second += c;
        if (f->second.is_zero()) next.erase(f);
      }
    };
    for (const auto& [kp, c] : cur) {
      const auto& [key, par] = kp;
      // Gen_j(C) . word
      acc(key, par ^ 1, gen_derive(basis, j + 1, c));
      // (-1)^{p(C)} C . (Gen_j word)
      auto pre = word_prepend_gen(basis, key, j);
      if (pre) {
        SuperPoly cc = (par & 1) ? -c : c;
        if (pre->sign < 0) cc = -cc;
        acc(pre->key, par, cc);
      }
    }
    cur = std::move(next);
  }

  // d/dx^c o (C w) = sum_i binom(c,i) (d/dx^i C) d/dx^{c-i} w.
  std::vector<std::pair<SuperPoly, OpKey>> out;
  for (const auto& [kp, c] : cur) {
    OpKey key = kp.first;
    SuperPoly der = c;
    Rational binom(1);
    for (int i = 0; i <= word.c; ++i) {
      if (i > 0) {
        der = der.dx();
        binom *= Rational(word.c - i + 1, i);
      }
      if (der.is_zero()) break;
      out.emplace_back(binom * der, OpKey{key.c + word.c - i, key.km});
    }
  }
  return out;
}

}  // namespace

SuperPoly ot_apply(int n, OpBasis basis, const OpTerms& t, const SuperPoly& g) {
  SuperPoly r = SuperPoly::zero(n);
  for (const auto& [key, a] : t) {
    SuperPoly v = g;
    // Rightmost (largest index) generator acts first.
    std::uint32_t rest = key.km;
    std::vector<int> bits;
    while (rest) {
      bits.push_back(std::countr_zero(rest));
      rest &= rest - 1;
    }
    for (auto it = bits.rbegin(); it != bits.rend(); ++it) v = gen_derive(basis, *it + 1, v);
    for (int i = 0; i < key.c && !v.is_zero(); ++i) v = v.dx();
    r += a * v;
  }
  return r;
}

OpTerms ot_compose(int n, OpBasis basis, const OpTerms& a, const OpTerms& b) {
  OpTerms out;
  for (const auto& [kb, cb] : b) {
    for (const SuperPoly& part : {cb.even_part(), cb.odd_part()}) {
      if (part.is_zero()) continue;
      for (const auto& [ka, ca] : a) {
        for (const auto& [mid, mkey] : push_coeff_left(n, basis, ka, part)) {
          auto w = word_mul(basis, mkey, kb);
          if (!w) continue;
          SuperPoly c = ca * mid;
          if (w->sign < 0) c = -c;
          ot_add(out, w->key, c);
        }
      }
    }
  }
  return out;
}

}  // namespace detail

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  if (n_ != o.n_ || lam_ != o.lam_ || mu_ != o.mu_)
    throw DomainError("operator sum requires matching n and weights");
  for (const auto& [k, c] : o.t_) detail::ot_add(t_, k, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  if (n_ != o.n_ || lam_ != o.lam_ || mu_ != o.mu_)
    throw DomainError("operator difference requires matching n and weights");
  for (const auto& [k, c] : o.t_) detail::ot_add(t_, k, -c);
  return *this;
}

DiffOp operator*(const Rational& s, const DiffOp& d) {
  DiffOp r(d.n_, d.lam_, d.mu_);
  if (s.is_zero()) return r;
  for (const auto& [k, c] : d.t_) r.t_.emplace(k, s * c);
  return r;
}

DiffOp DiffOp::compose(const DiffOp& a, const DiffOp& b) {
  if (a.n_ != b.n_) throw DomainError("mixed n in operator composition");
  if (b.mu_ != a.lam_) throw DomainError("operator weights do not chain");
  DiffOp r(a.n_, b.lam_, a.mu_);
  r.t_ = detail::ot_compose(a.n_, OpBasis::Dbar, a.t_, b.t_);
  return r;
}

int DiffOp::parity_or_throw() const {
  int p = -1;
  for (const auto& [k, c] : t_) {
    int tp = (c.parity_or_throw() + std::popcount(k.km)) & 1;
    if (p == -1)
      p = tp;
    else if (p != tp)
      throw DomainError("mixed-parity operator where homogeneous required");
  }
  return p == -1 ? 0 : p;
}

Bigrade DiffOp::orders() const {
  if (t_.empty()) throw DomainError("orders of the zero operator");
  int k = 0, tw = 0;
  for (const auto& [key, c] : t_) {
    k = std::max(k, key.c + std::popcount(key.km));
    tw = std::max(tw, 2 * key.c + std::popcount(key.km));
  }
  return Bigrade(k, HalfInt::of_twice(tw));
}

CanonicalOp to_canonical_basis(const DiffOp& d) {
  CanonicalOp r(d.n(), d.lam(), d.mu());
  OpTerms acc;
  for (const auto& [key, a] : d.terms()) {
    OpTerms cur;
    cur.emplace(OpKey{key.c, 0}, a);
    std::uint32_t rest = key.km;
    while (rest) {
      int j = std::countr_zero(rest);
      rest &= rest - 1;
      OpTerms factor;  // Dbar_j = dtheta_j - theta_j d/dx
      factor.emplace(OpKey{0, 1u << j}, SuperPoly::constant(d.n(), 1));
      factor.emplace(OpKey{1, 0}, -SuperPoly::theta(d.n(), j + 1));
      cur = detail::ot_compose(d.n(), OpBasis::Dtheta, cur, factor);
    }
    for (const auto& [k, c] : cur) detail::ot_add(acc, k, c);
  }
  for (const auto& [k, c] : acc) r.add_term(k.c, k.km, c);
  return r;
}

DiffOp from_canonical_basis(const CanonicalOp& d) {
  DiffOp r(d.n(), d.lam(), d.mu());
  OpTerms acc;
  for (const auto& [key, a] : d.terms()) {
    OpTerms cur;
    cur.emplace(OpKey{key.c, 0}, a);
    std::uint32_t rest = key.km;
    while (rest) {
      int j = std::countr_zero(rest);
      rest &= rest - 1;
      OpTerms factor;  // dtheta_j = Dbar_j + theta_j d/dx
      factor.emplace(OpKey{0, 1u << j}, SuperPoly::constant(d.n(), 1));
      factor.emplace(OpKey{1, 0}, SuperPoly::theta(d.n(), j + 1));
      cur = detail::ot_compose(d.n(), OpBasis::Dbar, cur, factor);
    }
    for (const auto& [k, c] : cur) detail::ot_add(acc, k, c);
  }
  for (const auto& [k, c] : acc) r.add_term(k.c, k.km, c);
  return r;
}

DiffOp density_op(const SuperPoly& f, const Weight& lam) {
  if (lam.flavor != WeightFlavor::Contact)
    throw DomainError("density_op requires a contact weight");
  const int n = f.n();
  int p = f.parity_or_throw();
  DiffOp r(n, lam, lam);
  r.add_term(1, 0, f);
  Rational w = (p == 1) ? Rational(1, 2) : Rational(-1, 2);  // -(-1)^{p(f)}/2
  for (int i = 1; i <= n; ++i) r.add_term(0, 1u << (i - 1), w * f.dbar(i));
  r.add_term(0, 0, lam.value * f.dx());
  return r;
}

DiffOp lie_derivative(const SuperPoly& f, const DiffOp& d) {
  int pf = f.parity_or_throw();
  int pd = d.parity_or_throw();
  DiffOp left = DiffOp::compose(density_op(f, d.mu()), d);
  DiffOp right = DiffOp::compose(d, density_op(f, d.lam()));
  return (pf & pd) ? left + right : left - right;
}

}  // namespace spoquant
