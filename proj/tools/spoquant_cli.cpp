// Command-line interface: exact equivariant quantization on the super
// circle. Subcommands: quantize, verify, casimir, critical.
//
// Exit codes: 0 success / all checks pass; 1 verification failure or nonzero
// residual; 2 usage or parse error; 3 critical-value obstruction.
#include <bit>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

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

using nlohmann::json;
using namespace spoquant;

namespace {

std::string set_display(const std::string& set) {
  if (set == "I_delta") return "I_δ";
  if (set == "C_prime") return "C′";
  return set;
}

std::string witness_text(const std::vector<WitnessEntry>& w) {
  std::string s;
  for (const auto& e : w) {
    if (!s.empty()) s += " ";
    s += e.name + "=" + e.value;
  }
  return s;
}

json witness_json(const std::vector<WitnessEntry>& w) {
  json arr = json::array();
  for (const auto& e : w) arr.push_back({{"name", e.name}, {"value", e.value}});
  return arr;
}

json hit_json(const CriticalHit& h) {
  return {{"set", h.set}, {"delta", h.delta.json_str()}, {"witness", witness_json(h.witness)}};
}

json diffop_terms_json(const DiffOp& d) {
  json arr = json::array();
  for (const auto& [key, coeff] : d.terms()) {
    if (coeff.is_zero()) continue;
    json word = json::array();
    for (int i = 1; i <= d.n(); ++i)
      if (key.km & (1u << (i - 1))) word.push_back(i);
    arr.push_back({{"dx", key.c}, {"dbar", word}, {"coefficient", print_superpoly(coeff)}});
  }
  return arr;
}

int run_quantize(int n, const std::string& lam_s, const std::string& mu_s,
                 const std::string& symbol, bool as_json) {
  Rational lam = Rational::parse(lam_s);
  Rational mu = Rational::parse(mu_s);
  FSym s = parse_contact_symbol(symbol, n, mu - lam);
  DiffOp d = quantize(s, contact_weight(lam), contact_weight(mu));
  if (as_json) {
    json out = {{"command", "quantize"},
                {"n", n},
                {"lambda", lam.json_str()},
                {"mu", mu.json_str()},
                {"delta", (mu - lam).json_str()},
                {"symbol", print_fsym(s)},
                {"operator", print_diffop(d)},
                {"terms", diffop_terms_json(d)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << print_diffop(d) << "\n";
  }
  return 0;
}

int run_verify(int n, const std::string& lam_s, const std::string& mu_s,
               const std::string& dmax_s, const std::string& suite, bool as_json) {
  VerifyOptions opt;
  opt.n = n;
  opt.lam = Rational::parse(lam_s);
  opt.mu = Rational::parse(mu_s);
  opt.d_max = HalfInt::parse(dmax_s);
  auto results = run_suite(suite, opt);
  bool ok = all_passed(results);
  if (as_json) {
    json checks = json::array();
    for (const auto& r : results)
      checks.push_back({{"name", r.name},
                        {"pass", r.pass},
                        {"informational", r.informational},
                        {"detail", r.detail}});
    json out = {{"command", "verify"},   {"n", n},
                {"lambda", opt.lam.json_str()}, {"mu", opt.mu.json_str()},
                {"dmax", opt.d_max.to_rational().json_str()}, {"suite", suite},
                {"checks", checks},      {"passed", ok}};
    std::cout << out.dump(2) << "\n";
  } else {
    int passed = 0, failed = 0, info = 0;
    for (const auto& r : results) {
      const char* tag = r.informational ? "[INFO]" : (r.pass ? "[PASS]" : "[FAIL]");
      std::cout << tag << " " << r.name << "\n";
      if (!r.detail.empty() && (!r.pass || r.informational))
        std::cout << "       " << r.detail << "\n";
      if (r.informational)
        ++info;
      else if (r.pass)
        ++passed;
      else
        ++failed;
    }
    std::cout << results.size() << " checks: " << passed << " passed, " << failed
              << " failed, " << info << " informational\n";
  }
  return ok ? 0 : 1;
}

int run_casimir(const std::string& rep, int n, const std::string& delta_s, int k,
                const std::string& d_s, const std::string& lam_s, bool as_json) {
  Rational delta = Rational::parse(delta_s);
  HalfInt d = HalfInt::parse(d_s);
  Bigrade at(k, d);  // validates ceil(d) <= k <= 2d
  int gcount = 2 * k - d.tw;
  if (gcount > n)
    throw DomainError("stratum (" + std::to_string(k) + "," + d.str() +
                      ") is empty: needs " + std::to_string(gcount) +
                      " odd moments but n=" + std::to_string(n));
  Rational lam = Rational::parse(lam_s);
  Rational a = alpha(k, d, 1 - n, delta);

  // Sweep the stratum basis; the residual must vanish identically.
  std::string residual = "0";
  int basis_size = 0;
  int ze = d.tw - k;
  for (std::uint32_t moms = 0; moms < (1u << n) && residual == "0"; ++moms) {
    if (std::popcount(moms) != gcount) continue;
    for (int a_x = 0; a_x <= 2 && residual == "0"; ++a_x)
      for (std::uint32_t th = 0; th < (1u << n); ++th) {
        FSym s = FSym::monomial(n, SymFlavor::Contact, delta, a_x, ze,
                                th | (moms << n), Rational(1));
        ++basis_size;
        if (rep == "fine") {
          FSym res = casimir_fine(s) - a * s;
          if (!res.is_zero()) {
            residual = "S=" + print_fsym(s) + ": " + print_fsym(res);
            break;
          }
        } else if (rep == "classical") {
          FSym v = sq_map(s);
          FSym res = casimir_classical(v) - a * v;
          if (!res.is_zero()) {
            residual = "S=" + print_fsym(v) + ": " + print_fsym(res);
            break;
          }
        } else {  // operators
          Weight wl = contact_weight(lam);
          Weight wm = contact_weight(lam + delta);
          DiffOp v = quantize(s, wl, wm);
          DiffOp res = casimir_operators(v) - a * v;
          if (!res.is_zero()) {
            residual = "D=quantize(" + print_fsym(s) + "): " + print_diffop(res);
            break;
          }
        }
      }
  }
  if (as_json) {
    json out = {{"command", "casimir"},
                {"rep", rep},
                {"n", n},
                {"delta", delta.json_str()},
                {"k", k},
                {"d", d.to_rational().json_str()},
                {"lambda", lam.json_str()},
                {"eigenvalue", a.json_str()},
                {"residual", residual},
                {"basis_size", basis_size}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "stratum (k,d) = (" << k << "," << d.str() << "), basis size " << basis_size
              << "\n";
    std::cout << "eigenvalue = " << a.str() << "\n";
    std::cout << "residual = " << residual << "\n";
  }
  return residual == "0" ? 0 : 1;
}

int run_critical(int n, int kmax, const std::string& dmax_s, const std::string& delta_s,
                 bool has_delta, bool as_json) {
  HalfInt dmax = HalfInt::parse(dmax_s);
  if (kmax < 0) throw DomainError("kmax must be nonnegative");
  if (has_delta) {
    Rational delta = Rational::parse(delta_s);
    CriticalReport rep = critical_report(delta, n, kmax, dmax);
    if (as_json) {
      json hits = json::array();
      for (const auto& h : rep.hits) hits.push_back(hit_json(h));
      json out = {{"command", "critical"}, {"n", n},
                  {"kmax", kmax},          {"dmax", dmax.to_rational().json_str()},
                  {"delta", delta.json_str()}, {"critical", rep.is_critical()},
                  {"hits", hits}};
      std::cout << out.dump(2) << "\n";
    } else {
      if (rep.is_critical()) {
        for (const auto& h : rep.hits)
          std::cout << "critical (" << set_display(h.set) << " witness "
                    << witness_text(h.witness) << ")\n";
      } else {
        std::cout << "not critical\n";
      }
    }
    return 0;
  }
  auto values = enumerate_critical_values(n, kmax, dmax);
  if (as_json) {
    json hits = json::array();
    for (const auto& h : values) hits.push_back(hit_json(h));
    json out = {{"command", "critical"},
                {"n", n},
                {"kmax", kmax},
                {"dmax", dmax.to_rational().json_str()},
                {"values", hits}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& h : values)
      std::cout << "delta=" << h.delta.str() << ": " << set_display(h.set) << " witness "
                << witness_text(h.witness) << "\n";
    std::cout << values.size() << " critical pairs (value, witness) in range\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact equivariant quantization of symbols on the super circle"};
  app.require_subcommand(1);

  // quantize
  auto* q = app.add_subcommand("quantize", "Quantize a contact fine symbol");
  int q_n = 3;
  std::string q_lam, q_mu, q_symbol;
  bool q_json = false;
  q->add_option("--n", q_n, "number of odd coordinates")->required();
  q->add_option("--lambda", q_lam, "lower weight (rational p/q)")->required();
  q->add_option("--mu", q_mu, "upper weight (rational p/q)")->required();
  q->add_option("--symbol", q_symbol, "contact symbol expression")->required();
  q->add_flag("--json", q_json, "emit JSON");

  // verify
  auto* v = app.add_subcommand("verify", "Run exact identity suites");
  int v_n = 3;
  std::string v_lam, v_mu, v_dmax, v_suite = "all";
  bool v_json = false;
  v->add_option("--n", v_n, "number of odd coordinates")->required();
  v->add_option("--lambda", v_lam, "lower weight (rational p/q)")->required();
  v->add_option("--mu", v_mu, "upper weight (rational p/q)")->required();
  v->add_option("--dmax", v_dmax, "max Heisenberg order of swept symbols")->required();
  v->add_option("--suite", v_suite, "suite to run")
      ->check(CLI::IsMember({"all", "actions", "lemmas", "casimir", "quantization"}));
  v->add_flag("--json", v_json, "emit JSON");

  // casimir
  auto* c = app.add_subcommand("casimir", "Casimir eigenvalue and residual on a stratum");
  int c_n = 3, c_k = 0;
  std::string c_rep, c_delta, c_d, c_lam = "1/3";
  bool c_json = false;
  c->add_option("--rep", c_rep, "representation")
      ->required()
      ->check(CLI::IsMember({"fine", "classical", "operators"}));
  c->add_option("--n", c_n, "number of odd coordinates")->required();
  c->add_option("--delta", c_delta, "weight shift (rational p/q)")->required();
  c->add_option("--k", c_k, "classical degree")->required();
  c->add_option("--d", c_d, "Heisenberg order (integer or half-integer)")->required();
  c->add_option("--lambda", c_lam, "lower weight for the operator representation");
  c->add_flag("--json", c_json, "emit JSON");

  // critical
  auto* r = app.add_subcommand("critical", "Enumerate or test critical weight shifts");
  int r_n = 3, r_kmax = 0;
  std::string r_dmax, r_delta;
  bool r_json = false;
  r->add_option("--n", r_n, "number of odd coordinates")->required();
  r->add_option("--kmax", r_kmax, "max classical degree scanned")->required();
  r->add_option("--dmax", r_dmax, "max Heisenberg order scanned")->required();
  auto* r_delta_opt = r->add_option("--delta", r_delta, "test this weight shift");
  r->add_flag("--json", r_json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(q)) return run_quantize(q_n, q_lam, q_mu, q_symbol, q_json);
    if (app.got_subcommand(v)) return run_verify(v_n, v_lam, v_mu, v_dmax, v_suite, v_json);
    if (app.got_subcommand(c))
      return run_casimir(c_rep, c_n, c_delta, c_k, c_d, c_lam, c_json);
    if (app.got_subcommand(r))
      return run_critical(r_n, r_kmax, r_dmax, r_delta, r_delta_opt->count() > 0, r_json);
  } catch (const CriticalValueError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
