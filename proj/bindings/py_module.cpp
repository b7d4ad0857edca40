// Python bindings: a thin, string-based veneer over the exact engine. All
// rationals cross the boundary as strings ("13/7") so no precision is lost;
// half-integers likewise ("3/2").
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <bit>
#include <string>
#include <vector>

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

namespace py = pybind11;
using namespace spoquant;

namespace {

Weight cw(const std::string& s) { return contact_weight(Rational::parse(s)); }

FSym parse_symbol(const std::string& expr, int n, const std::string& delta) {
  return parse_contact_symbol(expr, n, Rational::parse(delta));
}

std::string py_quantize(const std::string& symbol, int n, const std::string& lam,
                        const std::string& mu) {
  Weight l = cw(lam), m = cw(mu);
  FSym s = parse_contact_symbol(symbol, n, m.value - l.value);
  return print_diffop(quantize(s, l, m));
}

py::list py_quantize_terms(const std::string& symbol, int n, const std::string& lam,
                           const std::string& mu) {
  Weight l = cw(lam), m = cw(mu);
  FSym s = parse_contact_symbol(symbol, n, m.value - l.value);
  DiffOp d = quantize(s, l, m);
  py::list out;
  for (const auto& [key, coeff] : d.terms()) {
    py::dict t;
    t["dx"] = key.c;
    py::list db;
    for (int i = 1; i <= n; ++i)
      if (key.km & (1u << (i - 1))) db.append(i);
    t["dbar"] = db;
    t["coefficient"] = print_superpoly(coeff);
    out.append(t);
  }
  return out;
}

std::string py_apply_operator(const std::string& symbol, int n, const std::string& lam,
                              const std::string& mu, const std::string& func) {
  Weight l = cw(lam), m = cw(mu);
  FSym s = parse_contact_symbol(symbol, n, m.value - l.value);
  return print_superpoly(quantize(s, l, m).apply(parse_superfunction(func, n)));
}

py::list py_verify(const std::string& suite, int n, const std::string& lam,
                   const std::string& mu, const std::string& dmax) {
  VerifyOptions opt;
  opt.n = n;
  opt.lam = Rational::parse(lam);
  opt.mu = Rational::parse(mu);
  opt.d_max = HalfInt::parse(dmax);
  py::list out;
  for (const auto& r : run_suite(suite, opt)) {
    py::dict c;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["informational"] = r.informational;
    c["detail"] = r.detail;
    out.append(c);
  }
  return out;
}

py::dict hit_dict(const CriticalHit& h) {
  py::dict d;
  d["set"] = h.set;
  d["delta"] = h.delta.str();
  py::dict w;
  for (const auto& e : h.witness) w[py::str(e.name)] = e.value;
  d["witness"] = w;
  return d;
}

py::list py_critical_values(int n, int kmax, const std::string& dmax) {
  py::list out;
  for (const auto& h : enumerate_critical_values(n, kmax, HalfInt::parse(dmax)))
    out.append(hit_dict(h));
  return out;
}

py::list py_critical_hits(const std::string& delta, int n, int kmax,
                          const std::string& dmax) {
  py::list out;
  for (const auto& h :
       critical_report(Rational::parse(delta), n, kmax, HalfInt::parse(dmax)).hits)
    out.append(hit_dict(h));
  return out;
}

std::string py_casimir_eigenvalue(int k, const std::string& d, int n,
                                  const std::string& delta) {
  Bigrade at(k, HalfInt::parse(d));  // validates admissibility
  return alpha(at.k, at.d, 1 - n, Rational::parse(delta)).str();
}

// First nonzero Casimir residual over the (k, d) stratum basis with x-degree
// up to 2, rendered; "0" when the stratum is an exact eigenspace.
std::string py_casimir_residual(const std::string& rep, int k, const std::string& d,
                                int n, const std::string& delta,
                                const std::string& lam) {
  Bigrade at(k, HalfInt::parse(d));
  if (2 * at.k - at.d.tw > n) throw DomainError("stratum is empty at this n");
  Rational dl = Rational::parse(delta);
  Rational a = alpha(at.k, at.d, 1 - n, dl);
  Weight l = cw(lam);
  Weight m = contact_weight(l.value + dl);
  const int ze = at.d.tw - at.k, gc = 2 * at.k - at.d.tw;
  for (std::uint32_t mom = 0; mom < (1u << n); ++mom) {
    if (std::popcount(mom) != gc) continue;
    for (int a_x = 0; a_x <= 2; ++a_x)
      for (std::uint32_t th = 0; th < (1u << n); ++th) {
        FSym s = FSym::monomial(n, SymFlavor::Contact, dl, a_x, ze,
                                th | (mom << n), Rational(1));
        if (rep == "fine") {
          FSym r = casimir_fine(s) - a * s;
          if (!r.is_zero()) return print_fsym(r);
        } else if (rep == "classical") {
          FSym v = sq_map(s);
          FSym r = casimir_classical(v) - a * v;
          if (!r.is_zero()) return print_fsym(r);
        } else if (rep == "operators") {
          DiffOp q = quantize(s, l, m);
          DiffOp r = casimir_operators(q) - a * q;
          if (!r.is_zero()) return print_diffop(r);
        } else {
          throw DomainError("rep must be fine, classical, or operators");
        }
      }
  }
  return "0";
}

std::string py_normalize(const std::string& expr, int n) {
  return print_superpoly(parse_superfunction(expr, n));
}

std::string py_normalize_symbol(const std::string& expr, const std::string& flavor,
                                int n, const std::string& delta) {
  Rational dl = Rational::parse(delta);
  if (flavor == "contact") return print_fsym(parse_contact_symbol(expr, n, dl));
  if (flavor == "canonical") return print_fsym(parse_canonical_symbol(expr, n, dl));
  throw DomainError("flavor must be contact or canonical");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact equivariant quantization on the super circle";

  static py::exception<CriticalValueError> exc_critical(m, "CriticalWeightError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CriticalValueError& e) {
      py::set_error(exc_critical, e.what());
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("quantize", &py_quantize, py::arg("symbol"), py::arg("n") = 3,
        py::arg("lam") = "1/3", py::arg("mu") = "46/21",
        "Equivariant quantization of a contact symbol; returns the printed "
        "operator in the contact basis (Db1..Dbn, d/dx).");
  m.def("quantize_terms", &py_quantize_terms, py::arg("symbol"), py::arg("n") = 3,
        py::arg("lam") = "1/3", py::arg("mu") = "46/21",
        "Quantization as a list of {dx, dbar, coefficient} terms.");
  m.def("apply_operator", &py_apply_operator, py::arg("symbol"), py::arg("n") = 3,
        py::arg("lam") = "1/3", py::arg("mu") = "46/21", py::arg("func") = "x",
        "Quantize a symbol and apply the operator to a superfunction.");
  m.def("verify", &py_verify, py::arg("suite") = "all", py::arg("n") = 3,
        py::arg("lam") = "1/3", py::arg("mu") = "46/21", py::arg("dmax") = "2",
        "Run a verification suite; returns a list of check results.");
  m.def("critical_values", &py_critical_values, py::arg("n") = 3, py::arg("kmax") = 4,
        py::arg("dmax") = "2",
        "Enumerate critical weights delta in range, with witnesses.");
  m.def("critical_hits", &py_critical_hits, py::arg("delta"), py::arg("n") = 3,
        py::arg("kmax") = 4, py::arg("dmax") = "2",
        "Critical-set memberships of one delta (empty list: not critical).");
  m.def("casimir_eigenvalue", &py_casimir_eigenvalue, py::arg("k"), py::arg("d"),
        py::arg("n") = 3, py::arg("delta") = "13/7",
        "Casimir eigenvalue on the (k, d) fine-symbol stratum.");
  m.def("casimir_residual", &py_casimir_residual, py::arg("rep"), py::arg("k"),
        py::arg("d"), py::arg("n") = 3, py::arg("delta") = "13/7",
        py::arg("lam") = "1/3",
        "First nonzero Casimir eigen-residual on a stratum basis, or \"0\".");
  m.def("normalize", &py_normalize, py::arg("expr"), py::arg("n") = 3,
        "Parse a superfunction and print its canonical form.");
  m.def("normalize_symbol", &py_normalize_symbol, py::arg("expr"),
        py::arg("flavor") = "contact", py::arg("n") = 3, py::arg("delta") = "13/7",
        "Parse a symbol (contact or canonical flavor) and print it canonically.");
}
