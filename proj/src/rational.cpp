#include "spoquant/rational.hpp"

#include <cctype>

namespace spoquant {

Rational Rational::parse(std::string_view s) {
  if (s.empty()) throw DomainError("empty rational literal");
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '-') {
    neg = true;
    ++i;
  }
  auto read_digits = [&](std::string& out) {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      out.push_back(s[i]);
      ++i;
    }
    if (i == start) throw DomainError("malformed rational literal: " + std::string(s));
  };
  std::string num;
  read_digits(num);
  std::string den = "1";
  if (i < s.size() && s[i] == '/') {
    ++i;
    den.clear();
    read_digits(den);
  }
  if (i != s.size()) throw DomainError("malformed rational literal: " + std::string(s));
  mpz_class n(num), d(den);
  if (d == 0) throw DomainError("rational with zero denominator: " + std::string(s));
  if (neg) n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::json_str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

}  // namespace spoquant
