#include "spoquant/expr.hpp"

#include <bit>
#include <cctype>
#include <cstdint>
#include <optional>
#include <vector>

namespace spoquant {

namespace {

/// Uniform value carrier for the evaluator: superfunctions are the symbol
/// flavor with no moment part.
struct EvalCtx {
  int n;
  SymFlavor flavor;
  bool allow_moments;  // false for plain superfunctions
};

struct Token {
  enum Kind { Num, Var, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
  std::size_t pos = 0;
  std::string text;  // digits for Num, e.g. "t2" for Var
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.kind = Token::End;
      tok_.text.clear();
      return;
    }
    char c = src_[i_];
    switch (c) {
      case '+': tok_.kind = Token::Plus; ++i_; return;
      case '-': tok_.kind = Token::Minus; ++i_; return;
      case '*': tok_.kind = Token::Star; ++i_; return;
      case '^': tok_.kind = Token::Caret; ++i_; return;
      case '/': tok_.kind = Token::Slash; ++i_; return;
      case '(': tok_.kind = Token::LParen; ++i_; return;
      case ')': tok_.kind = Token::RParen; ++i_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      tok_.kind = Token::Num;
      tok_.text = std::string(src_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i_ + 1;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      tok_.kind = Token::Var;
      tok_.text = std::string(src_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", i_);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(std::string_view src, EvalCtx ctx) : lex_(src), ctx_(ctx) {}

  FSym run() {
    FSym v = expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::End) throw ParseError("trailing input", t.pos);
    return v;
  }

 private:
  FSym zero() const { return FSym::zero(ctx_.n, ctx_.flavor, Rational(0)); }
  FSym constant(const Rational& c) const {
    return FSym::monomial(ctx_.n, ctx_.flavor, Rational(0), 0, 0, 0, c);
  }

  FSym expr() {
    bool neg = false;
    if (lex_.peek().kind == Token::Minus) {
      lex_.take();
      neg = true;
    }
    FSym v = term();
    if (neg) v = -v;
    while (true) {
      Token::Kind k = lex_.peek().kind;
      if (k == Token::Plus) {
        lex_.take();
        v += term();
      } else if (k == Token::Minus) {
        lex_.take();
        v -= term();
      } else {
        return v;
      }
    }
  }

  FSym term() {
    FSym v = factor();
    while (lex_.peek().kind == Token::Star) {
      lex_.take();
      v = v * factor();
    }
    return v;
  }

  FSym factor() {
    auto [v, odd_gen] = atom();
    if (lex_.peek().kind == Token::Caret) {
      Token caret = lex_.take();
      Token e = lex_.take();
      if (e.kind != Token::Num) throw ParseError("exponent must be a nonnegative integer", e.pos);
      long exp = std::stol(e.text);
      if (odd_gen && exp >= 2) throw ParseError("odd generator squared", caret.pos);
      FSym r = constant(Rational(1));
      for (long i = 0; i < exp; ++i) r = r * v;
      return r;
    }
    return v;
  }

  /// Returns the value and whether the atom is a single odd generator.
  std::pair<FSym, bool> atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Num: {
        Rational num = Rational::parse(t.text);
        if (lex_.peek().kind == Token::Slash) {
          lex_.take();
          Token d = lex_.take();
          if (d.kind != Token::Num) throw ParseError("expected denominator", d.pos);
          Rational den = Rational::parse(d.text);
          if (den.is_zero()) throw ParseError("zero denominator", d.pos);
          num = num / den;
        }
        return {constant(num), false};
      }
      case Token::Var:
        return var(t);
      case Token::LParen: {
        FSym v = expr();
        Token r = lex_.take();
        if (r.kind != Token::RParen) throw ParseError("expected ')'", r.pos);
        return {v, false};
      }
      default:
        throw ParseError("expected a value", t.pos);
    }
  }

  std::pair<FSym, bool> var(const Token& t) {
    char head = t.text[0];
    std::string digits = t.text.substr(1);
    auto indexed = [&](const char* what) {
      if (digits.empty()) throw ParseError(std::string(what) + " needs an index", t.pos);
      long i = std::stol(digits);
      if (i < 1 || i > ctx_.n)
        throw ParseError(std::string(what) + " index exceeds n=" + std::to_string(ctx_.n), t.pos);
      return static_cast<int>(i);
    };
    if (head == 'x' && digits.empty())
      return {FSym::monomial(ctx_.n, ctx_.flavor, Rational(0), 1, 0, 0, Rational(1)), false};
    if (head == 't') {
      int i = indexed("theta generator");
      return {FSym::monomial(ctx_.n, ctx_.flavor, Rational(0), 0, 0, 1u << (i - 1), Rational(1)), true};
    }
    if (head == 'z' && digits.empty()) {
      if (!ctx_.allow_moments) throw ParseError("z is not a superfunction generator", t.pos);
      return {FSym::monomial(ctx_.n, ctx_.flavor, Rational(0), 0, 1, 0, Rational(1)), false};
    }
    if (head == 'g' || head == 'e') {
      bool contact_gen = head == 'g';
      if (!ctx_.allow_moments)
        throw ParseError(std::string(1, head) + " is not a superfunction generator", t.pos);
      if (contact_gen != (ctx_.flavor == SymFlavor::Contact))
        throw ParseError(contact_gen ? "g belongs to contact symbols" : "e belongs to canonical symbols",
                         t.pos);
      int i = indexed("moment generator");
      return {FSym::monomial(ctx_.n, ctx_.flavor, Rational(0), 0, 0, 1u << (ctx_.n + i - 1), Rational(1)),
              true};
    }
    throw ParseError("unknown generator '" + t.text + "'", t.pos);
  }

  Lexer lex_;
  EvalCtx ctx_;
};

FSym reweight(const FSym& s, const Rational& delta) {
  FSym out(s.n(), s.flavor(), delta);
  for (const auto& [k, c] : s.terms()) out.add_term(k.xe, k.ze, k.odd, c);
  return out;
}

}  // namespace

SuperPoly parse_superfunction(std::string_view src, int n) {
  FSym v = Parser(src, EvalCtx{n, SymFlavor::Contact, false}).run();
  SuperPoly p(n);
  for (const auto& [k, c] : v.terms()) p.add_term(k.xe, k.odd, c);
  return p;
}

FSym parse_contact_symbol(std::string_view src, int n, const Rational& delta) {
  return reweight(Parser(src, EvalCtx{n, SymFlavor::Contact, true}).run(), delta);
}

FSym parse_canonical_symbol(std::string_view src, int n, const Rational& delta) {
  return reweight(Parser(src, EvalCtx{n, SymFlavor::Canonical, true}).run(), delta);
}

/// --- printers ---------------------------------------------------------------

namespace {

void append_power(std::string& out, const std::string& base, int e, bool& first) {
  if (e == 0) return;
  if (!first) out += "*";
  first = false;
  out += base;
  if (e > 1) out += "^" + std::to_string(e);
}

void append_odd(std::string& out, std::uint32_t mask, int n, char theta, char moment, bool& first) {
  for (int b = 0; b < 2 * n; ++b) {
    if (!(mask & (1u << b))) continue;
    if (!first) out += "*";
    first = false;
    if (b < n)
      out += std::string(1, theta) + std::to_string(b + 1);
    else
      out += std::string(1, moment) + std::to_string(b - n + 1);
  }
}

/// Renders coeff*monomial with sign pulled out; monomial may be empty.
struct TermText {
  bool negative;
  std::string body;
};

TermText term_text(const Rational& coeff, const std::string& monomial) {
  Rational c = coeff;
  bool neg = c < Rational(0);
  if (neg) c = -c;
  std::string body;
  if (monomial.empty())
    body = c.str();
  else if (c == Rational(1))
    body = monomial;
  else
    body = c.str() + "*" + monomial;
  return {neg, body};
}

std::string join_terms(const std::vector<TermText>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0)
      out += terms[i].negative ? "-" : "";
    else
      out += terms[i].negative ? " - " : " + ";
    out += terms[i].body;
  }
  return out;
}

}  // namespace

std::string print_superpoly(const SuperPoly& p) {
  std::vector<TermText> terms;
  for (const auto& [k, c] : p.terms()) {
    std::string mono;
    bool first = true;
    append_power(mono, "x", k.xe, first);
    append_odd(mono, k.odd, p.n(), 't', 'g', first);
    terms.push_back(term_text(c, mono));
  }
  return join_terms(terms);
}

std::string print_fsym(const FSym& s) {
  char moment = s.flavor() == SymFlavor::Contact ? 'g' : 'e';
  std::vector<TermText> terms;
  for (const auto& [k, c] : s.terms()) {
    std::string mono;
    bool first = true;
    append_power(mono, "x", k.xe, first);
    append_power(mono, "z", k.ze, first);
    append_odd(mono, k.odd, s.n(), 't', moment, first);
    terms.push_back(term_text(c, mono));
  }
  return join_terms(terms);
}

namespace {

std::string print_opterms(const OpTerms& t, int n, const char* gen) {
  if (t.empty()) return "0";
  std::string out;
  bool first_term = true;
  for (const auto& [key, coeff] : t) {
    std::string word;
    bool first = true;
    if (key.c > 0) append_power(word, "dx", key.c, first);
    for (int b = 0; b < n; ++b)
      if (key.km & (1u << b)) {
        if (!first) word += "*";
        first = false;
        word += std::string(gen) + std::to_string(b + 1);
      }
    std::string cs = print_superpoly(coeff);
    std::string piece;
    bool neg = false;
    if (coeff.terms().size() == 1) {
      TermText tt = term_text(coeff.terms().begin()->second, [&] {
        std::string mono;
        bool f = true;
        append_power(mono, "x", coeff.terms().begin()->first.xe, f);
        append_odd(mono, coeff.terms().begin()->first.odd, n, 't', 'g', f);
        return mono;
      }());
      neg = tt.negative;
      piece = tt.body;
      if (!word.empty()) piece = (piece == "1") ? word : piece + "*" + word;
    } else {
      piece = "(" + cs + ")";
      if (!word.empty()) piece += "*" + word;
    }
    if (first_term) {
      out += neg ? "-" : "";
      first_term = false;
    } else {
      out += neg ? " - " : " + ";
    }
    out += piece;
  }
  return out;
}

}  // namespace

std::string print_diffop(const DiffOp& d) { return print_opterms(d.terms(), d.n(), "Db"); }
std::string print_canonicalop(const CanonicalOp& d) { return print_opterms(d.terms(), d.n(), "dt"); }

}  // namespace spoquant
