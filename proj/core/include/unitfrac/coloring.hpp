#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unitfrac/int_set.hpp"
#include "unitfrac/subset_search.hpp"

namespace unitfrac {

enum class ColoringStrategy { RandomUniform, RoundRobin, GreedyAdversarial, FromFile };

std::string strategy_name(ColoringStrategy s);
std::optional<ColoringStrategy> strategy_from_name(const std::string& name);

/// Assignment of every n in [2, m] to a class in [1, r].
struct Coloring {
  std::int64_t m = 2;
  int r = 1;
  ColoringStrategy strategy = ColoringStrategy::RoundRobin;
  std::uint64_t seed = 0;
  std::vector<int> assignment;  // index n-2

  int class_of(std::int64_t n) const {
    return assignment[static_cast<std::size_t>(n - 2)];
  }
  std::vector<std::int64_t> class_values(int k) const;
};

/// The greedy strategy keeps every class reciprocal sum strictly below 1;
/// this failure means no class could absorb first_unplaceable, which is
/// exactly the data the lower-bound experiment wants.
class GreedyInfeasibleError : public std::runtime_error {
 public:
  GreedyInfeasibleError(std::int64_t n, const std::string& what)
      : std::runtime_error(what), first_unplaceable(n) {}
  std::int64_t first_unplaceable;
};

/// Builds a coloring. RandomUniform draws classes with a seeded generator
/// through rejection sampling, so assignments are identical on every
/// platform. GreedyAdversarial assigns each n to the lowest class keeping
/// the class sum below 1 and throws GreedyInfeasibleError when none can.
/// FromFile is not constructible here; use coloring_from_classes.
Coloring make_coloring(std::int64_t m, int r, ColoringStrategy strategy,
                       std::uint64_t seed = 0);

/// Wraps an externally supplied assignment (class per n in [2, m]).
Coloring coloring_from_classes(std::int64_t m, int r,
                               std::vector<int> assignment);

struct ClassOutcome {
  int class_id = 0;
  std::size_t size = 0;
  Rational recip_sum;
  /// Classes are searched in descending reciprocal-sum order and the
  /// search stops at the first witness; later classes report searched =
  /// false.
  bool searched = false;
  bool exact = true;
  std::uint64_t count = 0;
  std::vector<std::vector<std::int64_t>> witnesses;
};

struct ExperimentReport {
  std::int64_t m = 0;
  int r = 0;
  ColoringStrategy strategy = ColoringStrategy::RoundRobin;
  std::uint64_t seed = 0;
  std::vector<ClassOutcome> classes;  // in class-id order
  bool verdict = false;               // some class contains a unit subset
  /// False only when no witness was found and some class search hit its
  /// node budget, leaving the verdict a lower bound.
  bool exact = true;
  double elapsed_seconds = 0.0;
  std::string timestamp;  // the only non-reproducible field
};

/// Searches every class for subsets with reciprocal sum 1. Witnesses are
/// re-verified in exact rationals before the report is returned.
ExperimentReport check_coloring(const Coloring& c, std::size_t witness_cap = 4,
                                const SearchBudget& budget = {});

struct SweepPoint {
  std::int64_t m = 0;
  bool infeasible = false;  // greedy could not place some n
  std::int64_t first_unplaceable = 0;
  bool verdict = false;
  bool exact = true;
};

struct StrategySweep {
  ColoringStrategy strategy = ColoringStrategy::RoundRobin;
  std::vector<SweepPoint> points;
  /// Only the deterministic greedy strategy gets a single cutover: the
  /// first m it cannot color. Random strategies report per-m outcomes
  /// only, since a verdict at m implies nothing at m+1.
  std::optional<std::int64_t> greedy_cutover;
};

struct SweepReport {
  int r = 0;
  std::int64_t m_lo = 0;
  std::int64_t m_hi = 0;
  std::uint64_t seed = 0;
  std::vector<StrategySweep> strategies;
  double elapsed_seconds = 0.0;
  std::string timestamp;
};

/// Runs check_coloring for every m in [m_lo, m_hi] per strategy. The
/// greedy sweep stops at its first infeasible m (every larger m shares the
/// failing prefix).
SweepReport sweep_threshold(int r, const std::vector<ColoringStrategy>& strategies,
                            std::int64_t m_lo, std::int64_t m_hi,
                            std::uint64_t seed = 0, std::size_t witness_cap = 4,
                            const SearchBudget& budget = {});

}  // namespace unitfrac
