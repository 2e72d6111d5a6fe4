#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "unitfrac/factored.hpp"
#include "unitfrac/int_set.hpp"

namespace unitfrac {

/// Range query for smooth numbers: n in [lo, hi] whose maximal prime power
/// divisors all fit under smooth_bound. When normality_eps is set, elements
/// must additionally satisfy the near-normal divisor-count window
///   (1 - eps) * loglog(n) <= omega(n) <= Omega(n) <= (1 + eps) * loglog(n)
/// with loglog clamped below at 1.
struct SmoothQuery {
  std::int64_t lo = 2;
  std::int64_t hi = 2;
  std::int64_t smooth_bound = 2;
  std::optional<double> normality_eps;
};

struct SieveConfig {
  std::int64_t segment_size = std::int64_t(1) << 20;
  std::int64_t max_segments = 4096;  // budget; exceeding it is an error
  int threads = 1;
};

/// Thrown when a query would exceed the configured segment budget.
class SieveBudgetError : public std::runtime_error {
 public:
  explicit SieveBudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// All smooth numbers in [query.lo, query.hi], ascending, fully factored.
/// Output is identical for any thread count.
IntSet smooth_in_range(const SmoothQuery& query, const SieveConfig& config = {});

/// Count of n in [1, x] all of whose prime factors are <= y (n = 1 counts).
std::int64_t count_prime_smooth(std::int64_t x, std::int64_t y,
                                const SieveConfig& config = {});

}  // namespace unitfrac
