#include "unitfrac/rational.hpp"

#include <cmath>

namespace unitfrac {

Rational unit_fraction(std::int64_t n) {
  if (n < 1) throw std::domain_error("unit_fraction: n must be >= 1");
  return Rational(1, n);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite");
  // cpp_rational assigns the exact binary value of a double.
  return Rational(x);
}

namespace {

// Always base 10; cpp_int's string constructor would read a leading zero as
// an octal prefix.
BigInt decimal_bigint(const std::string& s) {
  std::size_t p = 0;
  bool negative = false;
  if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
    negative = s[p] == '-';
    ++p;
  }
  if (p == s.size()) throw std::invalid_argument("parse_rational: missing digits");
  BigInt value = 0;
  for (; p < s.size(); ++p) {
    if (s[p] < '0' || s[p] > '9')
      throw std::invalid_argument("parse_rational: bad digit in '" + s + "'");
    value = value * 10 + (s[p] - '0');
  }
  return negative ? -value : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigInt num = decimal_bigint(text.substr(0, slash));
    const BigInt den = decimal_bigint(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(decimal_bigint(text));
  // finite decimal: sign, integer part, fractional digits
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t frac_len = text.size() - dot - 1;
  if (frac_len == 0) return Rational(decimal_bigint(digits));
  BigInt den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  return Rational(decimal_bigint(digits), den);
}

std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

}  // namespace unitfrac
