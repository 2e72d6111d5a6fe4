#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unitfrac/int_set.hpp"

namespace unitfrac {

/// E(h) = product over n in d of (1 + e^{2 pi i h / n}). Phases are reduced
/// mod n before evaluation so large integer h loses no precision.
std::complex<double> phase_product(const IntSet& d, double h);

/// |E(h)| through the closed form 2^|d| * product |cos(pi h / n)|; an
/// independent cross-check on phase_product.
double cosine_modulus(const IntSet& d, double h);

struct ExpSumEvaluation {
  std::int64_t period = 0;  // lcm of the set; the h-sum runs over one period
  /// E(h) for small |h|, kept for inspection and reports.
  std::vector<std::pair<std::int64_t, std::complex<double>>> samples;
  /// (1/period) * sum of E(h) over the period, minus 1.
  double total = 0.0;
  std::int64_t rounded_count = 0;
  double rounding_gap = 0.0;
  /// Rounding is conclusive only when the gap stays under 0.25.
  bool trusted = false;
};

/// Thrown when the set's lcm exceeds the sample budget.
class PeriodBudgetError : public std::runtime_error {
 public:
  explicit PeriodBudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Counts subsets with reciprocal sum 1 by averaging E(h) over integer h in
/// (-period/2, period/2]. Exact over the integers; floating error shows up
/// in rounding_gap. Accumulation is compensated and chunked by fixed-size
/// blocks, so the result is bit-identical for any thread count.
ExpSumEvaluation count_by_exponential_sum(const IntSet& d,
                                          std::int64_t period_cap = 1'000'000,
                                          int threads = 1);

/// For sets whose reciprocal sum sits in [2 - 3/n_scale, 2), every h with
/// 0 < h < n_scale/6 should give E(h) + E(-h) > 0. The check reports; it
/// never throws, including on a precondition violation.
struct PositivityReport {
  bool precondition_ok = false;
  std::string precondition_note;
  std::int64_t checked = 0;
  bool all_positive = false;
  std::int64_t first_violation = 0;  // 0 when none
  double min_real_part = 0.0;        // min over h of Re(E(h) + E(-h))
};

PositivityReport small_h_positivity(const IntSet& d, std::int64_t n_scale);

}  // namespace unitfrac
