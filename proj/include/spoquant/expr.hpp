#pragma once

#include <string>
#include <string_view>

#include "spoquant/finesym.hpp"

namespace spoquant {

/// Recursive-descent evaluation of the expression grammar
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ['^' nat]
///   atom   := rational | 'x' | 'z' | ('t'|'g'|'e') nat | '(' expr ')'
/// over exact rationals ("p" or "p/q"), whitespace insensitive. Generator
/// vocabulary by kind: superfunctions use x and t1..tn; contact symbols add
/// z and g1..gn; canonical symbols add z and e1..en. Raising an odd
/// generator to a power >= 2 is rejected. All errors are ParseError with a
/// byte offset.
SuperPoly parse_superfunction(std::string_view src, int n);
FSym parse_contact_symbol(std::string_view src, int n, const Rational& delta);
FSym parse_canonical_symbol(std::string_view src, int n, const Rational& delta);

/// Canonical printers: deterministic, re-parseable by the matching parser,
/// and a fixpoint of print(parse(print(.))). Zero prints as "0".
std::string print_superpoly(const SuperPoly& p);
std::string print_fsym(const FSym& s);

/// Operator normal form: terms "coeff*dx^c*Db1*..*Dbn" joined by " + "/" - ",
/// coefficients parenthesized when they have several terms. "dt" instead of
/// "Db" in the canonical derivative basis.
std::string print_diffop(const DiffOp& d);
std::string print_canonicalop(const CanonicalOp& d);

}  // namespace spoquant
