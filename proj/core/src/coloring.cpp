#include "unitfrac/coloring.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <limits>
#include <numeric>
#include <random>

namespace unitfrac {

namespace {

// Unbiased draw from [0, r); rejection keeps it identical everywhere,
// unlike std::uniform_int_distribution whose mapping is unspecified.
int draw_class(std::mt19937_64& gen, int r) {
  const auto bound = static_cast<std::uint64_t>(r);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t v = gen();
    if (v < limit) return static_cast<int>(v % bound);
  }
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string strategy_name(ColoringStrategy s) {
  switch (s) {
    case ColoringStrategy::RandomUniform: return "random";
    case ColoringStrategy::RoundRobin: return "round_robin";
    case ColoringStrategy::GreedyAdversarial: return "greedy_adversarial";
    case ColoringStrategy::FromFile: return "from_file";
  }
  return "unknown";
}

std::optional<ColoringStrategy> strategy_from_name(const std::string& name) {
  if (name == "random") return ColoringStrategy::RandomUniform;
  if (name == "round_robin") return ColoringStrategy::RoundRobin;
  if (name == "greedy_adversarial" || name == "greedy")
    return ColoringStrategy::GreedyAdversarial;
  if (name == "from_file") return ColoringStrategy::FromFile;
  return std::nullopt;
}

std::vector<std::int64_t> Coloring::class_values(int k) const {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; n <= m; ++n)
    if (class_of(n) == k) out.push_back(n);
  return out;
}

Coloring make_coloring(std::int64_t m, int r, ColoringStrategy strategy,
                       std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("coloring needs m >= 2");
  if (r < 1) throw std::invalid_argument("coloring needs r >= 1");

  Coloring c;
  c.m = m;
  c.r = r;
  c.strategy = strategy;
  c.seed = seed;
  c.assignment.resize(static_cast<std::size_t>(m - 1));

  switch (strategy) {
    case ColoringStrategy::RoundRobin:
      for (std::int64_t n = 2; n <= m; ++n)
        c.assignment[static_cast<std::size_t>(n - 2)] =
            static_cast<int>((n - 2) % r) + 1;
      break;
    case ColoringStrategy::RandomUniform: {
      std::mt19937_64 gen(seed);
      for (auto& a : c.assignment) a = draw_class(gen, r) + 1;
      break;
    }
    case ColoringStrategy::GreedyAdversarial: {
      std::vector<Rational> sums(static_cast<std::size_t>(r), Rational(0));
      for (std::int64_t n = 2; n <= m; ++n) {
        const Rational unit = unit_fraction(n);
        int placed = 0;
        for (int k = 0; k < r; ++k)
          if (sums[static_cast<std::size_t>(k)] + unit < 1) {
            sums[static_cast<std::size_t>(k)] += unit;
            placed = k + 1;
            break;
          }
        if (placed == 0)
          throw GreedyInfeasibleError(
              n, "no class can take " + std::to_string(n) +
                     " and stay below 1 (m=" + std::to_string(m) +
                     ", r=" + std::to_string(r) + ")");
        c.assignment[static_cast<std::size_t>(n - 2)] = placed;
      }
      break;
    }
    case ColoringStrategy::FromFile:
      throw std::invalid_argument(
          "from_file colorings need an explicit assignment; use "
          "coloring_from_classes");
  }
  return c;
}

Coloring coloring_from_classes(std::int64_t m, int r, std::vector<int> assignment) {
  if (m < 2) throw std::invalid_argument("coloring needs m >= 2");
  if (r < 1) throw std::invalid_argument("coloring needs r >= 1");
  if (assignment.size() != static_cast<std::size_t>(m - 1))
    throw std::invalid_argument("assignment must cover every n in [2, m]");
  for (int a : assignment)
    if (a < 1 || a > r)
      throw std::invalid_argument("class label " + std::to_string(a) +
                                  " outside [1, " + std::to_string(r) + "]");
  Coloring c;
  c.m = m;
  c.r = r;
  c.strategy = ColoringStrategy::FromFile;
  c.assignment = std::move(assignment);
  return c;
}

ExperimentReport check_coloring(const Coloring& c, std::size_t witness_cap,
                                const SearchBudget& budget) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.m = c.m;
  report.r = c.r;
  report.strategy = c.strategy;
  report.seed = c.seed;
  report.timestamp = iso_timestamp();

  std::vector<IntSet> sets;
  sets.reserve(static_cast<std::size_t>(c.r));
  report.classes.resize(static_cast<std::size_t>(c.r));
  for (int k = 1; k <= c.r; ++k) {
    const auto values = c.class_values(k);
    sets.push_back(IntSet::of(values));
    auto& outcome = report.classes[static_cast<std::size_t>(k - 1)];
    outcome.class_id = k;
    outcome.size = sets.back().size();
    outcome.recip_sum = sets.back().recip_sum();
  }

  // Descending reciprocal sum finds verdict-true instances fastest; ties
  // go to the lower class id.
  std::vector<int> order(static_cast<std::size_t>(c.r));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sets[static_cast<std::size_t>(a)].recip_sum() >
           sets[static_cast<std::size_t>(b)].recip_sum();
  });

  bool any_inexact = false;
  for (int idx : order) {
    auto& outcome = report.classes[static_cast<std::size_t>(idx)];
    auto found = find_unit_subsets(sets[static_cast<std::size_t>(idx)],
                                   witness_cap, SearchMethod::BranchAndBound,
                                   budget);
    outcome.searched = true;
    outcome.exact = found.exact;
    outcome.count = found.count;
    outcome.witnesses = std::move(found.witnesses);
    any_inexact = any_inexact || !found.exact;
    for (const auto& w : outcome.witnesses)
      if (sum_unit_fractions(w) != 1)
        throw std::logic_error("witness failed exact re-verification");
    if (outcome.count > 0) {
      report.verdict = true;
      break;
    }
  }
  report.exact = report.verdict || !any_inexact;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

SweepReport sweep_threshold(int r, const std::vector<ColoringStrategy>& strategies,
                            std::int64_t m_lo, std::int64_t m_hi,
                            std::uint64_t seed, std::size_t witness_cap,
                            const SearchBudget& budget) {
  if (m_lo < 2 || m_hi < m_lo)
    throw std::invalid_argument("sweep needs 2 <= m_lo <= m_hi");
  const auto start = std::chrono::steady_clock::now();
  SweepReport report;
  report.r = r;
  report.m_lo = m_lo;
  report.m_hi = m_hi;
  report.seed = seed;
  report.timestamp = iso_timestamp();

  for (auto strategy : strategies) {
    StrategySweep sweep;
    sweep.strategy = strategy;
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
      SweepPoint point;
      point.m = m;
      try {
        const auto coloring = make_coloring(m, r, strategy, seed);
        const auto checked = check_coloring(coloring, witness_cap, budget);
        point.verdict = checked.verdict;
        point.exact = checked.exact;
      } catch (const GreedyInfeasibleError& err) {
        point.infeasible = true;
        point.first_unplaceable = err.first_unplaceable;
        if (!sweep.greedy_cutover) sweep.greedy_cutover = m;
      }
      sweep.points.push_back(point);
      if (point.infeasible) break;  // every larger m shares the failing prefix
    }
    report.strategies.push_back(std::move(sweep));
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace unitfrac
