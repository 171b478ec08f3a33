#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "conekit/error.hpp"

namespace conekit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline int sign(const Rational& q) { return q.sign(); }

inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) fail(ErrorKind::ParseError, "zero denominator");
  return Rational(num, den);
}

/// Parses "p" or "p/q" (optional leading sign, q nonzero).
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!digits(num_text)) fail(ErrorKind::ParseError, "bad rational '" + std::string(text) + "'");
  std::string num_str(num_text.front() == '+' ? num_text.substr(1) : num_text);
  Integer num(num_str);
  Integer den = 1;
  if (slash != std::string_view::npos) {
    const auto den_text = text.substr(slash + 1);
    if (!digits(den_text) || den_text.front() == '-' || den_text.front() == '+')
      fail(ErrorKind::ParseError, "bad rational '" + std::string(text) + "'");
    den = Integer(std::string(den_text));
  }
  return make_rational(num, den);
}

}  // namespace conekit
