#pragma once

#include <cstdint>
#include <vector>

#include "unitfrac/int_set.hpp"

namespace unitfrac {

enum class SearchMethod { BranchAndBound, MeetInMiddle, ExpSum };

struct SearchBudget {
  std::size_t max_elements = 4096;
  std::uint64_t max_nodes = std::uint64_t(1) << 24;
};

struct UnitSubsetResult {
  /// Number of subsets with reciprocal sum exactly 1. Exact when exact is
  /// true, otherwise a lower bound from the explored part of the tree.
  std::uint64_t count = 0;
  /// Up to cap witnesses, each ascending, listed lexicographically.
  std::vector<std::vector<std::int64_t>> witnesses;
  SearchMethod method = SearchMethod::BranchAndBound;
  bool exact = true;
  std::uint64_t nodes = 0;
};

/// Finds subsets of d with reciprocal sum exactly 1 under exact rational
/// arithmetic. Throws std::invalid_argument when |d| exceeds the element
/// budget; node-budget exhaustion is not an error, the result comes back
/// with exact = false. MeetInMiddle falls back to BranchAndBound when the
/// lcm does not fit a 64-bit weight table (the method field reports what
/// actually ran); ExpSum delegates to the counting identity and returns no
/// witnesses.
UnitSubsetResult find_unit_subsets(const IntSet& d, std::size_t cap = 16,
                                   SearchMethod method = SearchMethod::BranchAndBound,
                                   const SearchBudget& budget = {});

}  // namespace unitfrac
