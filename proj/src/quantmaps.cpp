#include "spoquant/quantmaps.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "spoquant/contact.hpp"

namespace spoquant {

Rational alpha(int k, HalfInt d, int m, const Rational& delta) {
  Rational kk(k), dd = d.to_rational(), mm(m);
  return kk * kk + Rational(2) * (dd * dd - kk * dd) + (kk - dd) * (mm - Rational(2) * delta) +
         Rational(1, 2) * (Rational(2) * dd - kk) * (mm + Rational(1) - Rational(4) * delta) +
         Rational(1, 2) * delta * (Rational(2) * delta - mm - Rational(1));
}

FSym sq_map(const FSym& s) {
  if (s.flavor() != SymFlavor::Contact) throw DomainError("sq_map expects a contact-moment symbol");
  const Rational& delta = s.delta();
  FSym out(s.n(), s.flavor(), delta);
  for (const auto& [kd, comp] : s.bigrade_components()) {
    int c = kd.second - kd.first;  // ze-degree 2d-k, uniform on the stratum
    FSym term = comp;
    Rational coeff(1);
    out += term;
    for (int a = 1;; ++a) {
      term = delta_op(term);
      if (term.is_zero()) break;
      Rational factor = Rational(c) - delta - Rational(a - 1, 2);
      if (factor.is_zero())
        throw CriticalValueError("I_delta", delta.str(),
                                 {{"c", std::to_string(c)}, {"j", std::to_string(a - 1)}});
      coeff = coeff / (Rational(2 * a) * factor);
      out += coeff * term;
    }
  }
  return out;
}

Rational c_kr(int k, int r, const Rational& lam, const Rational& delta, int m) {
  Rational num(1), den(1);
  for (int j = 1; j <= r; ++j) {
    Rational dfac = Rational(m + 2 * k - j) - Rational(2) * delta;
    if (dfac.is_zero())
      throw CriticalValueError("C_prime", delta.str(),
                               {{"k", std::to_string(k)}, {"j", std::to_string(j)}});
    num *= Rational(2) * lam + Rational(k - j);
    den *= Rational(j) * dfac;  // folds r! in as we go
  }
  return num / den;
}

DiffOp q_sl(const FSym& s, const Weight& lam, const Weight& mu) {
  FSym can = to_canonical(s);
  if (lam.flavor != WeightFlavor::Contact || mu.flavor != WeightFlavor::Contact)
    throw DomainError("q_sl expects contact weights");
  Rational delta = mu.value - lam.value;
  if (!can.is_zero() && can.delta() != delta)
    throw DomainError("symbol weight does not match operator weights");
  int m = 1 - s.n();
  DiffOp out(s.n(), lam, mu);
  for (const auto& [k, comp] : can.degree_components()) {
    FSym term = comp;
    for (int r = 0; !term.is_zero(); ++r) {
      Rational coeff = c_kr(k, r, lam.value, delta, m);
      if (!coeff.is_zero()) out += coeff * q_aff(term, lam, mu);
      term = div_symbol(term);
    }
  }
  return out;
}

DiffOp quantize(const FSym& s, const Weight& lam, const Weight& mu) {
  if (s.flavor() != SymFlavor::Contact) throw DomainError("quantize expects a contact-moment symbol");
  if (!s.is_zero() && s.delta() != mu.value - lam.value)
    throw DomainError("symbol weight does not match operator weights");
  return q_sl(to_canonical(sq_map(s)), lam, mu);
}

FSym casimir_fine(const FSym& s) {
  FSym r(s.n(), s.flavor(), s.delta());
  for (const auto& t : spo_basis(s.n())) r += t.scale * act_fine(t.dual, act_fine(t.ham, s));
  return r;
}

FSym casimir_classical(const FSym& s) {
  FSym r(s.n(), s.flavor(), s.delta());
  for (const auto& t : spo_basis(s.n())) r += t.scale * act_classical(t.dual, act_classical(t.ham, s));
  return r;
}

DiffOp casimir_operators(const DiffOp& dop) {
  DiffOp r(dop.n(), dop.lam(), dop.mu());
  for (const auto& t : spo_basis(dop.n()))
    r += t.scale * lie_derivative(t.dual, lie_derivative(t.ham, dop));
  return r;
}

FSym n_sd(const FSym& s, const Rational& lam) {
  if (s.flavor() != SymFlavor::Contact) throw DomainError("n_sd expects a contact-moment symbol");
  if (s.is_zero()) return s;
  auto deg = s.homogeneous_degree();
  if (!deg) throw DomainError("n_sd expects a degree-homogeneous symbol");
  Rational coeff = (Rational(2) * lam + Rational(*deg - 1)) * Rational(1, 2);
  return coeff * (Rational(2) * div_c(s) + div_t(s));
}

FSym n_sd_graded(const FSym& s, const Rational& lam) {
  FSym r(s.n(), s.flavor(), s.delta());
  for (const auto& [k, comp] : s.degree_components()) r += n_sd(comp, lam);
  return r;
}

FSym n_pd_graded(const FSym& s, const Rational& lam) {
  return Rational(1, 2) * delta_op(s) + n_sd_graded(s, lam);
}

/// --- critical sets ---------------------------------------------------------

namespace {

template <typename Emit>
void scan_i_delta(HalfInt d_max, Emit emit) {
  int c_max = d_max.floor_int();
  int j_max = d_max.tw - 1;
  for (int c = 0; c <= c_max; ++c)
    for (int j = 0; j <= j_max; ++j)
      emit(Rational(2 * c - j, 2),
           CriticalHit{"I_delta", Rational(2 * c - j, 2),
                       {{"c", std::to_string(c)}, {"j", std::to_string(j)}}});
}

template <typename Emit>
void scan_c_prime(int n, int k_max, Emit emit) {
  int m = 1 - n;
  for (int k = 1; k <= k_max; ++k)
    for (int i = 1; i <= k; ++i)
      emit(Rational(2 * k - i + m, 2),
           CriticalHit{"C_prime", Rational(2 * k - i + m, 2),
                       {{"k", std::to_string(k)}, {"i", std::to_string(i)}}});
}

template <typename Emit>
void scan_c_crit(int n, int k_max, HalfInt d_max, Emit emit) {
  int m = 1 - n;
  for (int tw = 1; tw <= d_max.tw; ++tw) {
    HalfInt d = HalfInt::of_twice(tw);
    Rational dr = d.to_rational();
    for (int k = d.ceil_int(); k <= std::min(tw, k_max); ++k)
      for (int twp = 0; twp < tw; ++twp) {
        HalfInt dp = HalfInt::of_twice(twp);
        Rational dpr = dp.to_rational();
        for (int kp = dp.ceil_int(); kp <= std::min(twp, k_max); ++kp) {
          Rational p = Rational(k - kp) * (Rational(2 * (k + kp)) + Rational(m - 1)) -
                       Rational(4) * (Rational(k) * dr - Rational(kp) * dpr) +
                       Rational(2) * (dr - dpr) * (Rational(2) * dr + Rational(2) * dpr + Rational(1));
          Rational value = p / (Rational(4) * (dr - dpr));
          emit(value, CriticalHit{"C_crit",
                                  value,
                                  {{"k", std::to_string(k)},
                                   {"d", d.str()},
                                   {"k'", std::to_string(kp)},
                                   {"d'", dp.str()}}});
        }
      }
  }
}

}  // namespace

CriticalReport critical_report(const Rational& delta, int n, int k_max, HalfInt d_max) {
  CriticalReport rep{delta, {}};
  auto keep = [&](const Rational& value, CriticalHit hit) {
    if (value == delta) rep.hits.push_back(std::move(hit));
  };
  scan_i_delta(d_max, keep);
  scan_c_prime(n, k_max, keep);
  scan_c_crit(n, k_max, d_max, keep);
  return rep;
}

std::vector<CriticalHit> enumerate_critical_values(int n, int k_max, HalfInt d_max) {
  std::vector<CriticalHit> out;
  auto keep = [&](const Rational&, CriticalHit hit) { out.push_back(std::move(hit)); };
  scan_i_delta(d_max, keep);
  scan_c_prime(n, k_max, keep);
  scan_c_crit(n, k_max, d_max, keep);
  auto wit_str = [](const CriticalHit& h) {
    std::string s;
    for (const auto& e : h.witness) s += e.name + "=" + e.value + " ";
    return s;
  };
  std::sort(out.begin(), out.end(), [&](const CriticalHit& a, const CriticalHit& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    if (a.set != b.set) return a.set < b.set;
    return wit_str(a) < wit_str(b);
  });
  return out;
}

/// --- uniqueness construction -----------------------------------------------

namespace {

/// Strata reachable from (k, tw) under the three degree-lowering moves of
/// N_PD, kept within valid bigrades carrying at most n moment generators.
std::set<std::pair<int, int>> reachable_strata(int n, int k, int tw) {
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> frontier{{k, tw}};
  auto valid = [n](int kk, int tt) {
    return kk >= 0 && tt >= 0 && 2 * kk >= tt && kk <= tt && 2 * kk - tt <= n;
  };
  while (!frontier.empty()) {
    auto [kk, tt] = frontier.back();
    frontier.pop_back();
    if (!valid(kk, tt) || seen.count({kk, tt})) continue;
    seen.insert({kk, tt});
    frontier.push_back({kk, tt - 1});      // (1/2) Delta
    frontier.push_back({kk - 1, tt - 1});  // Div_T
    frontier.push_back({kk - 1, tt - 2});  // Div_C
  }
  seen.erase({k, tw});
  return seen;
}

}  // namespace

DiffOp quantize_via_casimir(const FSym& s, const Weight& lam, const Weight& mu) {
  if (s.flavor() != SymFlavor::Contact)
    throw DomainError("quantize_via_casimir expects a contact-moment symbol");
  if (lam.flavor != WeightFlavor::Contact || mu.flavor != WeightFlavor::Contact)
    throw DomainError("quantize_via_casimir expects contact weights");
  Rational delta = mu.value - lam.value;
  if (!s.is_zero() && s.delta() != delta)
    throw DomainError("symbol weight does not match operator weights");
  int n = s.n();
  int m = 1 - n;
  DiffOp out(n, lam, mu);
  for (const auto& [kd, comp] : s.bigrade_components()) {
    auto [k, tw] = kd;
    HalfInt d = HalfInt::of_twice(tw);
    Rational top = alpha(k, d, m, delta);

    auto lower = reachable_strata(n, k, tw);
    for (const auto& [kp, twp] : lower) {
      HalfInt dp = HalfInt::of_twice(twp);
      if (alpha(kp, dp, m, delta) == top)
        throw SingularSystemError(delta.str(), {{"k", std::to_string(k)},
                                                {"d", d.str()},
                                                {"k'", std::to_string(kp)},
                                                {"d'", dp.str()}});
    }

    // solve (alpha_{k,d} - alpha_{k',d'}) S_{k',d'} = [N_PD(S-hat)]_{k',d'}
    // in decreasing (k'+d'): contributions to a stratum come only from
    // strictly higher ones.
    std::vector<std::pair<int, int>> order(lower.begin(), lower.end());
    std::sort(order.begin(), order.end(), [](auto a, auto b) {
      return 2 * a.first + a.second > 2 * b.first + b.second;
    });
    FSym hat = comp;
    for (const auto& [kp, twp] : order) {
      FSym rhs = n_pd_graded(hat, lam.value).bigrade_component(kp, twp);
      if (rhs.is_zero()) continue;
      Rational gap = top - alpha(kp, HalfInt::of_twice(twp), m, delta);
      hat += (Rational(1) / gap) * rhs;
    }
    out += q_aff(to_canonical(hat), lam, mu);
  }
  return out;
}

}  // namespace spoquant
