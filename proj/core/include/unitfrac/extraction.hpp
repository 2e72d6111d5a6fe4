#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unitfrac/int_set.hpp"
#include "unitfrac/rational.hpp"

namespace unitfrac {

/// Closed integer interval [lo, hi].
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t length() const { return hi - lo + 1; }
  bool contains(std::int64_t x) const { return lo <= x && x <= hi; }
};

/// Scale anchor and the thresholds derived from it. The iterated-log term
/// is clamped below at 1 so every density bound stays positive at small
/// scales; strict mode additionally enforces theta + delta < 1/4.
struct DensityParams {
  std::int64_t scale = 1000;  // the N all densities are measured against
  double loglog_term = 0.0;   // 0 derives max(log log scale, 1)
  Rational nu = 2;
  Rational alpha = 0;
  Rational mu = 0;
  double theta = 0.1;
  double delta = 0.1;
  bool strict = false;

  double ll() const;
  /// Throws std::domain_error on out-of-range fields.
  void validate() const;
};

struct PruneStep {
  std::int64_t q = 0;
  std::vector<std::int64_t> removed;
};

/// Result of the sparse-prime-power pruning chain. ok means the kept set
/// still has reciprocal sum above the floor; a false ok is data, carrying
/// the full chain for inspection.
struct PruneResult {
  IntSet kept;
  std::vector<PruneStep> steps;
  bool ok = false;
  std::string status;
};

/// Repeatedly removes every multiple of the smallest prime power q whose
/// multiples in the current set have reciprocal sum at most
/// (rho - mu) / (2 q loglog). On success every surviving q clears that
/// threshold and the kept sum stays above mu. Preconditions (recip_sum(s)
/// >= rho > mu, all prime powers of s below params.scale) throw
/// std::invalid_argument.
PruneResult prune_sparse_prime_powers(const IntSet& s, const Rational& rho,
                                      const Rational& mu,
                                      const DensityParams& params);

struct WindowStep {
  std::vector<PruneStep> prune_steps;
  std::int64_t removed = 0;
};

/// Result of the window-extraction chain. kept has reciprocal sum in
/// [nu - 1/scale, nu) and passes the per-prime-power density bound
/// min(nu, alpha - nu) / (5 q loglog), both re-checked by direct scan
/// before ok is set.
struct WindowResult {
  IntSet kept;
  std::vector<PruneStep> initial_prune;
  std::vector<WindowStep> steps;
  bool ok = false;
  std::string status;
};

/// Prunes with (alpha, nu), then alternates pruning with (nu, nu/2) and
/// removing the smallest surviving element until the reciprocal sum lands
/// in [nu - 1/scale, nu). Requires recip_sum(j) >= params.alpha and
/// params.alpha > params.nu > 0 (std::invalid_argument otherwise).
/// Overshooting the window (possible only when elements below scale are
/// present) and density re-check failures come back as ok = false.
WindowResult extract_window_subset(const IntSet& j, const DensityParams& params);

/// Count of n in e with no multiple inside i.
std::int64_t count_non_divisors(const IntSet& e, const Interval& i);

enum class IntervalCase { Single, Pair, Neither };

struct IntervalOutcome {
  IntervalCase kind = IntervalCase::Neither;
  /// hypothesis_ok: the tested divisor hypothesis held, i.e. all but at
  /// most scale^(1-theta)/loglog^2 elements divide something in the
  /// interval. When it fails the outcome is Neither with the count.
  bool hypothesis_ok = false;
  std::int64_t non_divisor_count = 0;
  std::int64_t w = 0;        // Single: the common multiple found
  std::int64_t w1 = 0;       // Pair witnesses
  std::int64_t w2 = 0;
  std::string note;
};

/// Single iff a multiple of lcm(e) lies in the interval. Otherwise looks
/// for a pair w1 != w2 covering all but < 2 scale^(1-theta)/loglog^2
/// elements by divisibility with lcm(e) | w1*w2. Pair search scans x by
/// descending divisor coverage and is skipped (with a note) on intervals
/// longer than pair_search_limit.
IntervalOutcome classify_interval(const IntSet& e, const Interval& i,
                                  const DensityParams& params,
                                  std::int64_t pair_search_limit = 512);

/// Searches for d such that q*d lands in [scale^{3/4}, scale^{3/4+theta}],
/// d has no prime factor at or below exp((1/8 - theta/2) log(scale)/loglog),
/// omega(d) stays under loglog/logloglog(log) both clamped, and the
/// reciprocal sum of multiples of q*d in e exceeds c/(q*d*loglog^2).
/// Candidates are divisors of n/q over multiples n of q in e, tried
/// ascending; absent when none qualifies.
std::optional<std::int64_t> find_dense_divisor(const IntSet& e, std::int64_t q,
                                               const DensityParams& params,
                                               double threshold_constant = 1.0);

struct PipelineConfig {
  /// Extra interval centers to test besides the generated ones.
  std::vector<std::int64_t> user_h;
  std::int64_t interval_budget = 64;
  std::int64_t pair_search_limit = 512;
  std::int64_t max_rounds = 32;
  Rational entry_threshold = 6;
  Rational first_window = 2;
  Rational second_window = Rational(2, 3);
  Rational stop_threshold = Rational(8, 3);
  double qd_constant = 1.0;
  /// Replaces the merge step's unconditional loglog lower bound; the best
  /// triple must reach merge_sigma_constant * loglog.
  double merge_sigma_constant = 0.0025;
};

struct PipelineResult {
  IntSet d;
  bool ok = false;
  std::string status;
  /// One decision per entry; the CLI prints these as JSON lines.
  nlohmann::json trace = nlohmann::json::array();
  std::vector<IntSet> removed_sets;
  std::int64_t intervals_tested = 0;
  std::int64_t intervals_hypothesis_ok = 0;
};

/// The full iterative construction: window-extract at the first threshold,
/// classify budgeted intervals, restrict on a pair witness, re-extract at
/// the second threshold, peel the piece off, and stop at the stop
/// threshold; then merge three removed pieces whose shared prime-power
/// reciprocal sum clears the configured fraction of loglog. Requires
/// recip_sum(c) above entry_threshold (std::invalid_argument). A run that
/// exhausts its budgets without producing d reports ok = false with the
/// trace; that outcome is data, not an error.
PipelineResult run_extraction_pipeline(const IntSet& c,
                                       const DensityParams& params,
                                       const PipelineConfig& config = {});

}  // namespace unitfrac
