// Exit gate for the engine: thirteen checks, one pass/fail line each, all
// comparisons by exact rational equality (tolerance 0). Each check carries a
// wall-clock budget; exceeding it fails the check. The process exit status is
// the number of failed checks.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "schema_check.hpp"

#include "spoquant/contact.hpp"
#include "spoquant/diffop.hpp"
#include "spoquant/errors.hpp"
#include "spoquant/expr.hpp"
#include "spoquant/finesym.hpp"
#include "spoquant/halfint.hpp"
#include "spoquant/quantmaps.hpp"
#include "spoquant/rational.hpp"
#include "spoquant/superpoly.hpp"
#include "spoquant/verify.hpp"

using namespace spoquant;
using nlohmann::json;

#ifndef SPOQUANT_CLI_PATH
#define SPOQUANT_CLI_PATH ""
#endif
#ifndef SPOQUANT_SCHEMA_PATH
#define SPOQUANT_SCHEMA_PATH ""
#endif

namespace {

// ---------------------------------------------------------------- utilities

const int kN = 3;           // three odd coordinates, superdimension m = -2
const int kM = -2;
const Rational kLamR(1, 3);
const Rational kDeltaR(13, 7);
const Rational kMuR = kLamR + kDeltaR;

struct Fail {
  std::string detail;
};

void require(bool ok, const std::string& detail) {
  if (!ok) throw Fail{detail};
}

// Basis of the (k, 2d) stratum: x^a * theta_T * zeta^{2d-k} * mom_M with
// |M| = 2k - 2d moments, a <= x_max. Independent of the library's own
// basis helpers on purpose.
std::vector<FSym> stratum(int n, SymFlavor fl, const Rational& delta, int k, int tw,
                          int x_max) {
  std::vector<FSym> out;
  const int ze = tw - k, gc = 2 * k - tw;
  if (ze < 0 || gc < 0 || gc > n) return out;
  for (std::uint32_t mom = 0; mom < (1u << n); ++mom) {
    if (std::popcount(mom) != gc) continue;
    for (int a = 0; a <= x_max; ++a)
      for (std::uint32_t th = 0; th < (1u << n); ++th)
        out.push_back(
            FSym::monomial(n, fl, delta, a, ze, th | (mom << n), Rational(1)));
  }
  return out;
}

std::vector<std::pair<int, int>> strata_list(int n, int tw_max) {
  std::vector<std::pair<int, int>> out;
  for (int tw = 0; tw <= tw_max; ++tw)
    for (int k = (tw + 1) / 2; k <= tw; ++k)
      if (2 * k - tw <= n) out.emplace_back(k, tw);
  return out;
}

std::string two(const std::string& where, const std::string& l, const std::string& r) {
  return where + ": lhs = " + l + ", rhs = " + r;
}

// Run a shell command, capture combined stdout+stderr, return exit status.
int run_cmd(const std::string& cmd, std::string* out) {
  out->clear();
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  require(p != nullptr, "popen failed for: " + cmd);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out->append(buf, got);
  int st = pclose(p);
  require(st != -1, "pclose failed for: " + cmd);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string q(const std::string& s) { return "'" + s + "'"; }

// ------------------------------------------------------------ criterion 1

// Seeded random superpolynomial with small terms.
SuperPoly random_poly(int n, std::mt19937& gen) {
  SuperPoly p = SuperPoly::zero(n);
  const int terms = 1 + static_cast<int>(gen() % 4);
  for (int t = 0; t < terms; ++t) {
    int xe = static_cast<int>(gen() % 3);
    std::uint32_t mask = gen() % (1u << n);
    long num = static_cast<long>(gen() % 9) - 4;
    if (num == 0) num = 1;
    long den = 1 + static_cast<long>(gen() % 4);
    p += SuperPoly::monomial(n, xe, mask, Rational(num, den));
  }
  return p;
}

void crit_algebra_laws() {
  std::mt19937 gen(20240819u);
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      SuperPoly u = random_poly(n, gen);
      SuperPoly v = random_poly(n, gen);
      // Supercommutativity on parity-homogeneous parts.
      SuperPoly ue = u.even_part(), uo = u.odd_part();
      SuperPoly ve = v.even_part(), vo = v.odd_part();
      require(ue * ve == ve * ue, "even*even commutes, n=" + std::to_string(n));
      require(ue * vo == vo * ue, "even*odd commutes, n=" + std::to_string(n));
      require(uo * ve == ve * uo, "odd*even commutes, n=" + std::to_string(n));
      require(uo * vo == Rational(-1) * (vo * uo),
              "odd*odd anticommutes, n=" + std::to_string(n));
      for (int i = 1; i <= n; ++i) {
        // Graded Leibniz rule for the odd derivative.
        require((ue * v).dtheta(i) == ue.dtheta(i) * v + ue * v.dtheta(i),
                "Leibniz (even), n=" + std::to_string(n));
        require((uo * v).dtheta(i) == uo.dtheta(i) * v - uo * v.dtheta(i),
                "Leibniz (odd), n=" + std::to_string(n));
        // The contact generators commute with d/dx.
        require(u.dbar(i).dx() == u.dx().dbar(i),
                "[d/dx, Dbar_i] = 0, n=" + std::to_string(n));
        for (int j = 1; j <= n; ++j) {
          SuperPoly anti = u.dbar(j).dbar(i) + u.dbar(i).dbar(j);
          SuperPoly expect = (i == j) ? Rational(-2) * u.dx() : SuperPoly::zero(n);
          require(anti == expect, "Clifford relation, n=" + std::to_string(n));
        }
      }
    }
  }
}

// ------------------------------------------------------------ criterion 2

void crit_bracket_coherence() {
  auto hams = spo_hamiltonians(kN);
  // Graded Jacobi identity for the Lagrange bracket over all basis triples.
  for (const auto& f : hams)
    for (const auto& g : hams)
      for (const auto& h : hams) {
        int pf = f.parity_or_throw(), pg = g.parity_or_throw(),
            ph = h.parity_or_throw();
        auto sgn = [](int a, int b) { return Rational((a & b & 1) ? -1 : 1); };
        SuperPoly cyc = sgn(pf, ph) * lagrange(f, lagrange(g, h)) +
                        sgn(pg, pf) * lagrange(g, lagrange(h, f)) +
                        sgn(ph, pg) * lagrange(h, lagrange(f, g));
        require(cyc.is_zero(),
                "Jacobi fails at f=" + print_superpoly(f) + ", g=" + print_superpoly(g) +
                    ", h=" + print_superpoly(h));
      }
  // The density action is a morphism: [L_f, L_g] = L_{{f,g}}.
  Weight lam = contact_weight(kLamR);
  auto mons = coeff_monomials(kN, 2);
  for (const auto& f : hams)
    for (const auto& g : hams) {
      int pf = f.parity_or_throw(), pg = g.parity_or_throw();
      Rational sgn((pf & pg & 1) ? -1 : 1);
      SuperPoly br = lagrange(f, g);
      for (const auto& u : mons) {
        SuperPoly lhs = density_action(f, lam, density_action(g, lam, u)) -
                        sgn * density_action(g, lam, density_action(f, lam, u));
        SuperPoly rhs = density_action(br, lam, u);
        require(lhs == rhs,
                two("morphism at f=" + print_superpoly(f) + ", g=" + print_superpoly(g) +
                        ", u=" + print_superpoly(u),
                    print_superpoly(lhs), print_superpoly(rhs)));
      }
    }
}

// ------------------------------------------------------------ criterion 3

void crit_contact_condition() {
  auto mons = coeff_monomials(kN, 2);
  for (const auto& f : spo_hamiltonians(kN)) {
    VField xf = hamiltonian_field(f);
    int pf = f.parity_or_throw();
    for (int m = 1; m <= kN; ++m)
      for (const auto& u : mons) {
        SuperPoly lhs = xf.apply(u.dbar(m));
        SuperPoly xfu = xf.apply(u);
        lhs = (pf & 1) ? lhs + xfu.dbar(m) : lhs - xfu.dbar(m);
        SuperPoly rhs = SuperPoly::zero(kN);
        for (int i = 1; i <= kN; ++i)
          rhs += Rational(1, 2) * (f.dbar(i).dbar(m) * u.dbar(i));
        require(lhs == rhs,
                two("f=" + print_superpoly(f) + ", m=" + std::to_string(m) +
                        ", u=" + print_superpoly(u),
                    print_superpoly(lhs), print_superpoly(rhs)));
      }
  }
}

// ------------------------------------------------------------ criterion 4

void crit_weight_intertwiner() {
  Weight lam = contact_weight(Rational(2, 5));
  Weight ber = phi_iso_weight(lam, kN);
  // Monomials of total degree <= 3 (x-degree plus odd length).
  std::vector<SuperPoly> mons;
  for (int a = 0; a <= 3; ++a)
    for (std::uint32_t mask = 0; mask < (1u << kN); ++mask)
      if (a + std::popcount(mask) <= 3)
        mons.push_back(SuperPoly::monomial(kN, a, mask, Rational(1)));
  for (const auto& f : spo_hamiltonians(kN)) {
    VField xf = hamiltonian_field(f);
    for (const auto& u : mons) {
      SuperPoly lhs = density_action(f, lam, u);
      SuperPoly rhs = ber_action(xf, ber, u);
      require(lhs == rhs,
              two("f=" + print_superpoly(f) + ", u=" + print_superpoly(u),
                  print_superpoly(lhs), print_superpoly(rhs)));
    }
  }
}

// ------------------------------------------------------------ criterion 5

void crit_fine_action_definitional() {
  for (auto [k, tw] : strata_list(kN, 4))
    for (const auto& s : stratum(kN, SymFlavor::Contact, kDeltaR, k, tw, 2))
      for (const auto& f : spo_hamiltonians(kN)) {
        FSym closed = act_fine(f, s);
        FSym via0 = act_fine_definitional(f, s, contact_weight(Rational(0)));
        FSym via13 = act_fine_definitional(f, s, contact_weight(kLamR));
        require(via0 == via13,
                two("lift-weight dependence at f=" + print_superpoly(f) +
                        ", S=" + print_fsym(s),
                    print_fsym(via0), print_fsym(via13)));
        require(closed == via0,
                two("closed vs definitional at f=" + print_superpoly(f) +
                        ", S=" + print_fsym(s),
                    print_fsym(closed), print_fsym(via0)));
      }
  // The known misprint in the compact formula for the quadratic action is
  // documented by the verifier as an informational check.
  bool reported = false;
  for (const auto& r : run_suite("lemmas", VerifyOptions{}))
    if (r.name == "lemmas/square-action-compact-form")
      reported = r.informational && r.pass && !r.detail.empty();
  require(reported, "verifier does not report the compact-form discrepancy");
}

// ------------------------------------------------------------ criterion 6

void crit_lemma_suite() {
  auto results = run_suite("lemmas", VerifyOptions{});
  const char* names[] = {
      "lemmas/square-bracket-theta",          "lemmas/delta-euler-commutator",
      "lemmas/delta-x-commutator",            "lemmas/delta-affine-commute",
      "lemmas/delta-moment-commute",          "lemmas/delta-xsquare-commutator",
      "lemmas/delta-theta-gamma-commute",     "lemmas/delta-theta-dgamma-commutator",
      "lemmas/delta-power-square-commutator", "lemmas/delta-bigrade-shift",
  };
  for (const char* want : names) {
    bool found = false;
    for (const auto& r : results)
      if (r.name == want) {
        found = true;
        require(r.pass, std::string(want) + " failed: " + r.detail);
      }
    require(found, std::string("missing lemma check ") + want);
  }
  for (const auto& r : results) require(r.pass, r.name + " failed: " + r.detail);
  // Bracket relation between the quadratic and the odd linear Hamiltonians.
  for (int i = 1; i <= kN; ++i) {
    VField lhs = vf_bracket(hamiltonian_field(parse_superfunction("x^2", kN)),
                            hamiltonian_field(SuperPoly::theta(kN, i)));
    VField rhs = hamiltonian_field(Rational(-1) *
                                   (SuperPoly::x(kN) * SuperPoly::theta(kN, i)));
    require(lhs == rhs, "[X_{x^2}, X_{t" + std::to_string(i) + "}] != -X_{x*t" +
                            std::to_string(i) + "}");
  }
}

// ------------------------------------------------------------ criterion 7

void crit_casimir_spectrum() {
  // Scalar spectrum on every stratum with 2d <= 5.
  for (auto [k, tw] : strata_list(kN, 5)) {
    Rational a = alpha(k, HalfInt::of_twice(tw), kM, kDeltaR);
    for (const auto& s : stratum(kN, SymFlavor::Contact, kDeltaR, k, tw, 2))
      require(casimir_fine(s) == a * s,
              "spectrum off at (k,2d)=(" + std::to_string(k) + "," + std::to_string(tw) +
                  "), S=" + print_fsym(s));
  }
  // The Casimir commutes with every generator in all three representations.
  Weight lam = contact_weight(kLamR), mu = contact_weight(kMuR);
  for (auto [k, tw] : strata_list(kN, 4))
    for (const auto& s : stratum(kN, SymFlavor::Contact, kDeltaR, k, tw, 1))
      for (const auto& f : spo_hamiltonians(kN)) {
        require(casimir_fine(act_fine(f, s)) == act_fine(f, casimir_fine(s)),
                "fine commutant at f=" + print_superpoly(f) + ", S=" + print_fsym(s));
        require(casimir_classical(act_classical(f, s)) ==
                    act_classical(f, casimir_classical(s)),
                "classical commutant at f=" + print_superpoly(f) +
                    ", S=" + print_fsym(s));
        DiffOp d = q_aff(to_canonical(s), lam, mu);
        require(casimir_operators(lie_derivative(f, d)) ==
                    lie_derivative(f, casimir_operators(d)),
                "operator commutant at f=" + print_superpoly(f) +
                    ", S=" + print_fsym(s));
      }
}

// ------------------------------------------------------------ criterion 8

void crit_casimir_comparisons() {
  Weight lam = contact_weight(kLamR), mu = contact_weight(kMuR);
  for (auto [k, tw] : strata_list(kN, 4))
    for (const auto& s : stratum(kN, SymFlavor::Contact, kDeltaR, k, tw, 2)) {
      FSym cls = casimir_classical(s);
      require(cls == casimir_fine(s) + Rational(1, 2) * delta_op(s),
              "classical vs fine at S=" + print_fsym(s));
      DiffOp dop = q_aff(to_canonical(s), lam, mu);
      FSym lhs = to_contact(sigma_aff(casimir_operators(dop)));
      require(lhs == cls + n_sd(s, kLamR),
              two("operator vs classical at S=" + print_fsym(s), print_fsym(lhs),
                  print_fsym(cls + n_sd(s, kLamR))));
    }
}

// ------------------------------------------------------------ criterion 9

void crit_quantization_equivariance() {
  Weight lam = contact_weight(kLamR), mu = contact_weight(kMuR);
  for (auto [k, tw] : strata_list(kN, 4))
    for (const auto& s : stratum(kN, SymFlavor::Contact, kDeltaR, k, tw, 2)) {
      DiffOp qs = quantize(s, lam, mu);
      require(h_symbol(qs, HalfInt::of_twice(tw)) == s,
              "principal-symbol normalization at S=" + print_fsym(s));
      for (const auto& f : spo_hamiltonians(kN)) {
        FSym moved = act_fine(f, s);
        require(sq_map(act_fine(f, s)) == act_classical(f, sq_map(s)),
                "normalization-map equivariance at f=" + print_superpoly(f) +
                    ", S=" + print_fsym(s));
        require(lie_derivative(f, qs) == quantize(moved, lam, mu),
                "quantization equivariance at f=" + print_superpoly(f) +
                    ", S=" + print_fsym(s));
      }
    }
}

// ----------------------------------------------------------- criterion 10

void crit_uniqueness_cross_construction() {
  Weight lam = contact_weight(kLamR), mu = contact_weight(kMuR);
  for (auto [k, tw] : strata_list(kN, 4)) {
    Rational a = alpha(k, HalfInt::of_twice(tw), kM, kDeltaR);
    for (const auto& s : stratum(kN, SymFlavor::Contact, kDeltaR, k, tw, 2)) {
      DiffOp qs = quantize(s, lam, mu);
      require(quantize_via_casimir(s, lam, mu) == qs,
              "eigenvector construction disagrees at S=" + print_fsym(s));
      require(casimir_operators(qs) == a * qs,
              "operator Casimir eigenvalue off at S=" + print_fsym(s));
    }
  }
}

// ----------------------------------------------------------- criterion 11

void crit_gamma_map() {
  Weight lam = contact_weight(kLamR);
  for (auto [k, tw] : strata_list(kN, 4))
    for (const auto& s : stratum(kN, SymFlavor::Canonical, kDeltaR, k, tw, 1)) {
      for (const auto& f : affine_hamiltonians(kN))
        require(gamma_map(f, lam, kDeltaR, s).is_zero(),
                "defect map nonzero on affine f=" + print_superpoly(f) +
                    ", S=" + print_fsym(s));
      // Quadratic even Hamiltonian: -(2 lambda + k - 1) i(dzeta).
      Rational c = Rational(-1) * (Rational(2) * kLamR + Rational(k - 1));
      FSym lhs = gamma_map(parse_superfunction("x^2", kN), lam, kDeltaR, s);
      FSym rhs = c * interior(1, s);
      require(lhs == rhs, two("quadratic defect at S=" + print_fsym(s),
                              print_fsym(lhs), print_fsym(rhs)));
    }
}

// ----------------------------------------------------------- criterion 12

std::string wit(const CriticalHit& h, const char* name) {
  for (const auto& e : h.witness)
    if (e.name == name) return e.value;
  throw Fail{"hit lacks witness entry " + std::string(name)};
}

void crit_critical_sets() {
  const int kmax = 4;
  const HalfInt dmax = HalfInt::of_int(2);
  auto hits = enumerate_critical_values(kN, kmax, dmax);

  // Eigenvalue-collision oracle: for each admissible pair of strata, the
  // difference alpha(k,d) - alpha(k',d') is affine in delta (checked at a
  // third point), so each pair yields exactly one colliding delta.
  std::vector<std::string> oracle, got;
  for (int tw = 1; tw <= dmax.tw; ++tw)
    for (int k = (tw + 1) / 2; k <= std::min(tw, kmax); ++k)
      for (int twp = 0; twp < tw; ++twp)
        for (int kp = (twp + 1) / 2; kp <= std::min(twp, kmax); ++kp) {
          HalfInt d = HalfInt::of_twice(tw), dp = HalfInt::of_twice(twp);
          Rational a0 = alpha(k, d, kM, Rational(0)) - alpha(kp, dp, kM, Rational(0));
          Rational a1 = alpha(k, d, kM, Rational(1)) - alpha(kp, dp, kM, Rational(1));
          Rational b = a1 - a0;
          require(!b.is_zero(), "collision equation degenerate");
          require(alpha(k, d, kM, Rational(2)) - alpha(kp, dp, kM, Rational(2)) ==
                      a0 + Rational(2) * b,
                  "collision equation is not affine in delta");
          Rational root = Rational(-1) * a0 / b;
          oracle.push_back(root.str() + "|" + std::to_string(k) + "|" + d.str() + "|" +
                           std::to_string(kp) + "|" + dp.str());
        }
  for (const auto& h : hits) {
    if (h.set != "C_crit") continue;
    got.push_back(h.delta.str() + "|" + wit(h, "k") + "|" + wit(h, "d") + "|" +
                  wit(h, "k'") + "|" + wit(h, "d'"));
  }
  std::sort(oracle.begin(), oracle.end());
  std::sort(got.begin(), got.end());
  require(oracle == got, "eigenvalue-collision set mismatch: oracle has " +
                             std::to_string(oracle.size()) + " entries, engine has " +
                             std::to_string(got.size()));

  // Existence-set re-derivations from their closed forms.
  oracle.clear();
  got.clear();
  for (int c = 0; c <= dmax.floor_int(); ++c)
    for (int j = 0; j <= dmax.tw - 1; ++j)
      oracle.push_back(Rational(2 * c - j, 2).str() + "|" + std::to_string(c) + "|" +
                       std::to_string(j));
  for (const auto& h : hits)
    if (h.set == "I_delta")
      got.push_back(h.delta.str() + "|" + wit(h, "c") + "|" + wit(h, "j"));
  std::sort(oracle.begin(), oracle.end());
  std::sort(got.begin(), got.end());
  require(oracle == got, "resonance set mismatch");

  oracle.clear();
  got.clear();
  for (int k = 1; k <= kmax; ++k)
    for (int i = 1; i <= k; ++i)
      oracle.push_back(Rational(2 * k - i + kM, 2).str() + "|" + std::to_string(k) +
                       "|" + std::to_string(i));
  for (const auto& h : hits)
    if (h.set == "C_prime")
      got.push_back(h.delta.str() + "|" + wit(h, "k") + "|" + wit(h, "i"));
  std::sort(oracle.begin(), oracle.end());
  std::sort(got.begin(), got.end());
  require(oracle == got, "projective critical set mismatch");

  // Membership endpoints and cross-consistency.
  require(!critical_report(kDeltaR, kN, kmax, dmax).is_critical(),
          "13/7 wrongly reported critical");
  CriticalReport zero = critical_report(Rational(0), kN, kmax, dmax);
  require(zero.is_critical(), "0 not reported critical");
  bool witness00 = false;
  for (const auto& h : zero.hits)
    if (h.set == "I_delta" && wit(h, "c") == "0" && wit(h, "j") == "0") witness00 = true;
  require(witness00, "0 lacks the resonance witness c=0, j=0");
  for (const auto& h : hits)
    require(critical_report(h.delta, kN, kmax, dmax).is_critical(),
            "enumerated value " + h.delta.str() + " fails membership");
}

// ----------------------------------------------------------- criterion 13

struct CorpusEntry {
  const char* kind;  // "sf", "contact", "canonical"
  const char* src;
};

void crit_cli() {
  // Parse/print fixpoint on a 30-expression corpus.
  const CorpusEntry corpus[30] = {
      {"sf", "x"},
      {"sf", "1"},
      {"sf", "0"},
      {"sf", "-x"},
      {"sf", "3/2"},
      {"sf", "x^2 - 2*x + 1"},
      {"sf", "t1"},
      {"sf", "t1*t2"},
      {"sf", "-t1*t3 + x*t2"},
      {"sf", "t1*t2*t3"},
      {"sf", "x^3*t1*t2*t3"},
      {"sf", "1/2*x - 1/3"},
      {"sf", "t2*t1"},
      {"sf", "(1+t1*t2)^2"},
      {"sf", "(x+t1)*(x-t1)"},
      {"contact", "z"},
      {"contact", "g1"},
      {"contact", "z*g1"},
      {"contact", "g1*g2*g3"},
      {"contact", "x*z^2"},
      {"contact", "z^2 - 1/2*z + 3"},
      {"contact", "t1*z + g1"},
      {"contact", "-g3*g2*g1"},
      {"contact", "z*g1 - 7/12*g2"},
      {"contact", "(z+g1*g2)*(z-g1*g2)"},
      {"contact", "x*t1*g2*z"},
      {"canonical", "e1"},
      {"canonical", "e1*e2*z"},
      {"canonical", "(e1+t1*z)*(e2+t2*z)"},
      {"canonical", "x^2*e3 - 1/2*e1*e2*e3"},
  };
  for (const auto& e : corpus) {
    std::string kind = e.kind;
    if (kind == "sf") {
      SuperPoly p = parse_superfunction(e.src, kN);
      std::string s1 = print_superpoly(p);
      SuperPoly p2 = parse_superfunction(s1, kN);
      require(p2 == p, std::string("reparse changed value of ") + e.src);
      require(print_superpoly(p2) == s1, std::string("print unstable for ") + e.src);
    } else {
      FSym s = (kind == "contact") ? parse_contact_symbol(e.src, kN, kDeltaR)
                                   : parse_canonical_symbol(e.src, kN, kDeltaR);
      std::string s1 = print_fsym(s);
      FSym s2 = (kind == "contact") ? parse_contact_symbol(s1, kN, kDeltaR)
                                    : parse_canonical_symbol(s1, kN, kDeltaR);
      require(s2 == s, std::string("reparse changed value of ") + e.src);
      require(print_fsym(s2) == s1, std::string("print unstable for ") + e.src);
    }
  }

  // JSON outputs of every subcommand validate against the published schema.
  // Paths are baked in at configure time; the environment may override.
  const char* cli_env = std::getenv("SPOQUANT_CLI_PATH");
  const char* schema_env = std::getenv("SPOQUANT_SCHEMA_PATH");
  std::string cli = cli_env ? cli_env : SPOQUANT_CLI_PATH;
  std::string schema_path = schema_env ? schema_env : SPOQUANT_SCHEMA_PATH;
  require(!cli.empty(), "SPOQUANT_CLI_PATH not set");
  require(!schema_path.empty(), "SPOQUANT_SCHEMA_PATH not set");
  std::ifstream sf(schema_path);
  require(sf.good(), "cannot open schema " + schema_path);
  json schema = json::parse(sf);
  schemacheck::Validator validator(schema);
  const std::string base = q(cli);
  const char* json_cmds[] = {
      " quantize --n 3 --lambda 1/3 --mu 46/21 --symbol 't1*z' --json",
      " verify --n 1 --lambda 1/3 --mu 46/21 --dmax 1 --suite actions --json",
      " casimir --rep fine --n 3 --delta 13/7 --k 2 --d 1 --json",
      " critical --n 3 --kmax 2 --dmax 1 --delta 13/7 --json",
      " critical --n 3 --kmax 2 --dmax 1 --json",
  };
  for (const char* args : json_cmds) {
    std::string out;
    int code = run_cmd(base + args, &out);
    require(code == 0, std::string("expected exit 0 for") + args + ", got " +
                           std::to_string(code) + "\n" + out);
    json doc = json::parse(out, nullptr, false);
    require(!doc.is_discarded(), std::string("invalid JSON from") + args);
    std::string why;
    require(validator.validate(doc, &why),
            std::string("schema violation from") + args + ": " + why);
  }

  // Exit-code contract: 0 success, 1 failed verification, 2 usage/parse
  // error, 3 critical weight.
  std::string out;
  int code = run_cmd(base + " quantize --n 3 --lambda 1/3 --mu 1/3 --symbol 'g1*g2'",
                     &out);
  require(code == 0 && out.find("Db1*Db2") != std::string::npos,
          "quantize success case: code " + std::to_string(code) + ", out: " + out);
  code = run_cmd(base + " critical --n 3 --kmax 4 --dmax 2 --delta 0", &out);
  require(code == 0 && out.find("critical") == 0,
          "critical membership case: code " + std::to_string(code) + ", out: " + out);
  code = run_cmd(base + " verify --n 3 --lambda 1/3 --mu 4/3 --dmax 1 --suite quantization",
                 &out);
  require(code == 1, "verify at resonant weight: expected exit 1, got " +
                         std::to_string(code) + "\n" + out);
  code = run_cmd(base + " quantize --n 3 --lambda 1/3 --mu 46/21 --symbol 't1^2'", &out);
  require(code == 2 && out.find("odd generator squared (at byte 2)") != std::string::npos,
          "parse error case: code " + std::to_string(code) + ", out: " + out);
  code = run_cmd(base + " quantize --n 3 --lambda 1/3 --mu 4/3 --symbol 't1*z'", &out);
  require(code == 3 && out.find("critical value delta=1 in I_delta") != std::string::npos,
          "critical weight case: code " + std::to_string(code) + ", out: " + out);
}

// ----------------------------------------------------------------- harness

struct Criterion {
  int id;
  const char* label;
  double budget_s;
  void (*run)();
};

}  // namespace

int main() {
  const Criterion table[] = {
      {1, "algebra laws on seeded random superpolynomials", 1.0, crit_algebra_laws},
      {2, "bracket Jacobi and density-action morphism", 5.0, crit_bracket_coherence},
      {3, "contact condition for basis Hamiltonians", 1.0, crit_contact_condition},
      {4, "contact/Berezinian density intertwiner", 1.0, crit_weight_intertwiner},
      {5, "fine action closed form vs definitional", 30.0, crit_fine_action_definitional},
      {6, "operator lemma suite", 30.0, crit_lemma_suite},
      {7, "Casimir spectrum and commutants", 120.0, crit_casimir_spectrum},
      {8, "Casimir comparisons across representations", 60.0, crit_casimir_comparisons},
      {9, "quantization equivariance and normalization", 120.0,
       crit_quantization_equivariance},
      {10, "uniqueness cross-construction and eigenvalues", 120.0,
       crit_uniqueness_cross_construction},
      {11, "equivariance defect map", 10.0, crit_gamma_map},
      {12, "critical sets vs independent oracles", 10.0, crit_critical_sets},
      {13, "CLI corpus, JSON schema, exit codes", 5.0, crit_cli},
  };
  int failures = 0;
  for (const auto& c : table) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.run();
    } catch (const Fail& f) {
      ok = false;
      detail = f.detail;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    if (ok && secs >= c.budget_s) {
      ok = false;
      detail = "over budget of " + std::to_string(c.budget_s) + "s";
    }
    std::printf("ACCEPT-%02d %s (%.2fs) %s\n", c.id, ok ? "PASS" : "FAIL", secs,
                c.label);
    if (!ok) std::printf("          %s\n", detail.c_str());
    failures += ok ? 0 : 1;
  }
  std::printf("%d/13 acceptance criteria passed\n", 13 - failures);
  return failures;
}
