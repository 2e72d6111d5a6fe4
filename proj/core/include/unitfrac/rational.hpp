#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace unitfrac {

// All reciprocal sums and window thresholds in this library are exact.
// BigInt/Rational are arbitrary precision; Rational is always normalized
// (lowest terms, positive denominator).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 1/n as an exact rational. Requires n >= 1.
Rational unit_fraction(std::int64_t n);

/// Nearest-double approximation; fine for reporting, never for decisions.
double to_double(const Rational& r);

/// Exact dyadic rational equal to the given double bit pattern.
/// Lets real-valued configuration (log log N and friends) participate in
/// exact comparisons deterministically. Requires a finite argument.
Rational rational_from_double(double x);

/// Parses "p/q", a plain integer, or a finite decimal such as "0.25".
Rational parse_rational(const std::string& text);

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& r);

}  // namespace unitfrac
