#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "conekit/lattice.hpp"

namespace conekit {

// Class literals over labeled bases:
//   expr := ["+"|"-"] term (("+"|"-") term)*  |  "0"
//   term := [coef ["/" den] ["*"]] label
// e.g. "2F+G", "f - 1/2*x1", "3/4x2".

inline CohomClass parse_class(const IntersectionLattice& lattice, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto error = [&](const std::string& why) -> void {
    fail(ErrorKind::ParseError, "class literal '" + std::string(text) + "': " + why);
  };
  if (s.empty()) error("empty");

  auto result = CohomClass::zero(lattice);
  if (s == "0") return result;
  std::vector<Rational> coeffs(lattice.rank(), Rational(0));

  std::size_t pos = 0;
  bool first = true;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (pos < s.size()) {
    int sgn = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sgn = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      error("expected '+' or '-' at position " + std::to_string(pos));
    }
    first = false;

    Rational coef = 1;
    if (pos < s.size() && is_digit(s[pos])) {
      std::size_t start = pos;
      while (pos < s.size() && is_digit(s[pos])) ++pos;
      Integer num(s.substr(start, pos - start));
      Integer den = 1;
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        start = pos;
        while (pos < s.size() && is_digit(s[pos])) ++pos;
        if (start == pos) error("missing denominator");
        den = Integer(s.substr(start, pos - start));
        if (den == 0) error("zero denominator");
      }
      coef = Rational(num, den);
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') ++pos;
    const std::string label = s.substr(start, pos - start);
    if (label.empty()) error("missing basis label");
    const auto index = lattice.index_of(label);
    if (!index) error("unknown basis label '" + label + "'");
    coeffs[*index] += sgn * coef;
  }
  return CohomClass(lattice, std::move(coeffs));
}

/// Inverse of parse_class: terms in basis order, "*" only after fractions.
inline std::string format_class(const IntersectionLattice& lattice, const CohomClass& a) {
  require_on(lattice, a);
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rational& q = a[i];
    if (q == 0) continue;
    const Rational mag = q < 0 ? Rational(-q) : q;
    if (q < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (mag != 1) {
      out += to_string(mag);
      if (!is_integer(mag)) out += "*";
    }
    out += lattice.labels()[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace conekit
