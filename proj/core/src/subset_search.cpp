#include "unitfrac/subset_search.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "unitfrac/exp_sum.hpp"

namespace unitfrac {

namespace {

using U128 = unsigned __int128;

struct BranchSearch {
  const std::vector<std::int64_t>& values;
  std::vector<Rational> units;
  std::vector<Rational> suffix;
  std::size_t cap;
  std::uint64_t max_nodes;
  UnitSubsetResult& out;
  std::vector<std::int64_t> chosen;
  bool aborted = false;

  BranchSearch(const std::vector<std::int64_t>& vals, std::size_t cap_,
               std::uint64_t max_nodes_, UnitSubsetResult& out_)
      : values(vals), cap(cap_), max_nodes(max_nodes_), out(out_) {
    units.reserve(values.size());
    for (auto v : values) units.push_back(unit_fraction(v));
    suffix.assign(values.size() + 1, Rational(0));
    for (std::size_t i = values.size(); i-- > 0;)
      suffix[i] = suffix[i + 1] + units[i];
  }

  // Include-before-exclude makes witnesses come out in lexicographic
  // order, so truncation at cap keeps the right prefix.
  void dfs(std::size_t i, const Rational& target) {
    if (aborted || ++out.nodes > max_nodes) {
      aborted = true;
      return;
    }
    if (target == 0) {
      ++out.count;
      if (out.witnesses.size() < cap) out.witnesses.push_back(chosen);
      return;
    }
    if (i == values.size() || suffix[i] < target) return;
    if (units[i] <= target) {
      chosen.push_back(values[i]);
      dfs(i + 1, target - units[i]);
      chosen.pop_back();
    }
    dfs(i + 1, target);
  }
};

UnitSubsetResult branch_and_bound(const std::vector<std::int64_t>& values,
                                  std::size_t cap, const SearchBudget& budget) {
  UnitSubsetResult out;
  out.method = SearchMethod::BranchAndBound;
  BranchSearch search(values, cap, budget.max_nodes, out);
  search.dfs(0, Rational(1));
  out.exact = !search.aborted;
  return out;
}

// Subset sums of one half, as (sum of lcm/n weights, element bitmask).
std::vector<std::pair<U128, std::uint64_t>> half_sums(
    const std::vector<std::int64_t>& weights) {
  const std::size_t k = weights.size();
  std::vector<std::pair<U128, std::uint64_t>> out;
  out.reserve(std::size_t(1) << k);
  out.emplace_back(0, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t n = out.size();
    for (std::size_t j = 0; j < n; ++j)
      out.emplace_back(out[j].first + static_cast<U128>(weights[i]),
                       out[j].second | (std::uint64_t(1) << i));
  }
  return out;
}

UnitSubsetResult meet_in_middle(const IntSet& d,
                                const std::vector<std::int64_t>& values,
                                std::size_t cap, const SearchBudget& budget) {
  const std::size_t k = values.size();
  const BigInt& big_lcm = d.lcm();
  if (k > 40 || big_lcm > std::numeric_limits<std::int64_t>::max() ||
      (std::uint64_t(1) << (k - k / 2)) > budget.max_nodes)
    return branch_and_bound(values, cap, budget);
  const auto lcm = static_cast<std::int64_t>(big_lcm);

  std::vector<std::int64_t> left_w, right_w;
  const std::size_t a = k / 2;
  for (std::size_t i = 0; i < a; ++i) left_w.push_back(lcm / values[i]);
  for (std::size_t i = a; i < k; ++i) right_w.push_back(lcm / values[i]);

  auto left = half_sums(left_w);
  auto right = half_sums(right_w);
  std::sort(right.begin(), right.end());

  UnitSubsetResult out;
  out.method = SearchMethod::MeetInMiddle;
  out.nodes = left.size() + right.size();
  const U128 target = static_cast<U128>(lcm);
  const std::size_t collect_limit = std::max<std::size_t>(cap, 4096);
  for (const auto& [ls, lmask] : left) {
    if (ls > target) continue;
    const U128 need = target - ls;
    auto lo = std::lower_bound(right.begin(), right.end(),
                               std::pair<U128, std::uint64_t>(need, 0));
    for (auto it = lo; it != right.end() && it->first == need; ++it) {
      ++out.count;
      if (out.witnesses.size() < collect_limit) {
        std::vector<std::int64_t> w;
        for (std::size_t i = 0; i < a; ++i)
          if (lmask & (std::uint64_t(1) << i)) w.push_back(values[i]);
        for (std::size_t i = a; i < k; ++i)
          if (it->second & (std::uint64_t(1) << (i - a))) w.push_back(values[i]);
        out.witnesses.push_back(std::move(w));
      }
    }
  }
  std::sort(out.witnesses.begin(), out.witnesses.end());
  if (out.witnesses.size() > cap) out.witnesses.resize(cap);
  return out;
}

}  // namespace

UnitSubsetResult find_unit_subsets(const IntSet& d, std::size_t cap,
                                   SearchMethod method,
                                   const SearchBudget& budget) {
  if (d.size() > budget.max_elements)
    throw std::invalid_argument("set size " + std::to_string(d.size()) +
                                " exceeds element budget " +
                                std::to_string(budget.max_elements));
  const auto values = d.values();
  switch (method) {
    case SearchMethod::MeetInMiddle:
      if (d.empty()) return branch_and_bound(values, cap, budget);
      return meet_in_middle(d, values, cap, budget);
    case SearchMethod::ExpSum: {
      const auto eval = count_by_exponential_sum(d);
      UnitSubsetResult out;
      out.method = SearchMethod::ExpSum;
      out.count = eval.rounded_count > 0
                      ? static_cast<std::uint64_t>(eval.rounded_count)
                      : 0;
      out.exact = eval.trusted;
      out.nodes = static_cast<std::uint64_t>(eval.period);
      return out;
    }
    case SearchMethod::BranchAndBound:
      break;
  }
  return branch_and_bound(values, cap, budget);
}

}  // namespace unitfrac
