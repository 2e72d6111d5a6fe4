#pragma once

#include <algorithm>
#include <cmath>

namespace unitfrac {

/// Iterated logarithms clamped below at 1. Every bound in the extraction
/// machinery divides by one of these, and the clamp keeps them positive and
/// monotone for the small inputs that show up in tests. Each level clamps
/// the previous clamped value, so loglog(x) >= 1 always and the outer logs
/// never see an argument below 1.
inline double loglog(double x) {
  const double inner = std::log(x);
  if (!(inner > 1.0)) return 1.0;
  return std::max(std::log(inner), 1.0);
}

inline double logloglog(double x) { return std::max(std::log(loglog(x)), 1.0); }

inline double loglogloglog(double x) {
  return std::max(std::log(logloglog(x)), 1.0);
}

}  // namespace unitfrac
