#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "unitfrac/int_set.hpp"
#include "unitfrac/rational.hpp"
#include "unitfrac/subset_search.hpp"

using namespace unitfrac;

namespace {

// Full enumeration with no pruning or ordering tricks; the reference the
// searchers are measured against.
void walk_all(const std::vector<std::int64_t>& v, std::size_t i, Rational sum,
              std::vector<std::int64_t>& chosen, std::uint64_t& count,
              std::vector<std::vector<std::int64_t>>& hits) {
  if (i == v.size()) {
    if (sum == 1 && !chosen.empty()) {
      ++count;
      hits.push_back(chosen);
    }
    return;
  }
  walk_all(v, i + 1, sum, chosen, count, hits);
  chosen.push_back(v[i]);
  walk_all(v, i + 1, sum + Rational(1, v[i]), chosen, count, hits);
  chosen.pop_back();
}

std::uint64_t oracle_count(const std::vector<std::int64_t>& v,
                           std::vector<std::vector<std::int64_t>>* hits_out = nullptr) {
  std::uint64_t count = 0;
  std::vector<std::int64_t> chosen;
  std::vector<std::vector<std::int64_t>> hits;
  walk_all(v, 0, Rational(0), chosen, count, hits);
  if (hits_out) {
    for (auto& h : hits) std::sort(h.begin(), h.end());
    std::sort(hits.begin(), hits.end());
    *hits_out = std::move(hits);
  }
  return count;
}

std::vector<std::int64_t> random_distinct(std::mt19937_64& rng, int k,
                                          std::int64_t hi) {
  std::set<std::int64_t> s;
  std::uniform_int_distribution<std::int64_t> dist(2, hi);
  while (static_cast<int>(s.size()) < k) s.insert(dist(rng));
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("examples") {
  const auto a = find_unit_subsets(IntSet::of({2, 3, 6}));
  CHECK(a.count == 1);
  REQUIRE(a.witnesses.size() == 1);
  CHECK(a.witnesses[0] == std::vector<std::int64_t>{2, 3, 6});
  CHECK(a.exact);

  const auto b = find_unit_subsets(IntSet::of({2, 3, 4, 6, 12}));
  CHECK(b.count == 2);
  REQUIRE(b.witnesses.size() == 2);
  CHECK(b.witnesses[0] == std::vector<std::int64_t>{2, 3, 6});
  CHECK(b.witnesses[1] == std::vector<std::int64_t>{2, 4, 6, 12});

  CHECK(find_unit_subsets(IntSet::of({3, 4, 5})).count == 0);
  CHECK(find_unit_subsets(IntSet::of({2})).count == 0);
  CHECK(find_unit_subsets(IntSet{}).count == 0);
}

TEST_CASE("branch and bound equals full enumeration on random sets") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> size_dist(5, 14);
  for (int trial = 0; trial < 40; ++trial) {
    const auto vals = random_distinct(rng, size_dist(rng), 60);
    const auto d = IntSet::of(vals);
    std::vector<std::vector<std::int64_t>> expected_hits;
    const auto expected = oracle_count(vals, &expected_hits);
    const auto got = find_unit_subsets(d, 1 << 20);
    REQUIRE(got.exact);
    REQUIRE(got.count == expected);
    REQUIRE(got.witnesses == expected_hits);
  }
  // a few at the top of the exhaustive range
  for (int trial = 0; trial < 6; ++trial) {
    const auto vals = random_distinct(rng, 16, 48);
    const auto expected = oracle_count(vals);
    const auto got = find_unit_subsets(IntSet::of(vals));
    REQUIRE(got.exact);
    REQUIRE(got.count == expected);
  }
}

TEST_CASE("witnesses re-verify in exact rationals") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const auto vals = random_distinct(rng, 12, 40);
    const auto got = find_unit_subsets(IntSet::of(vals), 64);
    for (const auto& w : got.witnesses) {
      REQUIRE(sum_unit_fractions(w) == Rational(1));
      REQUIRE(std::is_sorted(w.begin(), w.end()));
    }
    REQUIRE(got.witnesses.size() == std::min<std::uint64_t>(64, got.count));
  }
}

TEST_CASE("meet in the middle agrees with branch and bound") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    const auto vals = random_distinct(rng, 12, 36);
    const auto bb = find_unit_subsets(IntSet::of(vals), 32,
                                      SearchMethod::BranchAndBound);
    const auto mm = find_unit_subsets(IntSet::of(vals), 32,
                                      SearchMethod::MeetInMiddle);
    REQUIRE(mm.exact);
    REQUIRE(mm.count == bb.count);
    REQUIRE(mm.witnesses == bb.witnesses);
  }
  const auto mm = find_unit_subsets(IntSet::of({2, 3, 4, 6, 12}), 16,
                                    SearchMethod::MeetInMiddle);
  CHECK(mm.method == SearchMethod::MeetInMiddle);
  CHECK(mm.count == 2);
  CHECK(mm.witnesses[0] == std::vector<std::int64_t>{2, 3, 6});
}

TEST_CASE("meet in the middle falls back when the weight table cannot exist") {
  // 41 elements exceeds the half-split limit; large primes keep the lcm
  // beyond any 64-bit weight table and the reciprocal sum below 1, so the
  // fallback search prunes at the root and stays exact.
  std::vector<std::int64_t> primes;
  for (std::int64_t n = 101; primes.size() < 41; ++n) {
    bool prime = n > 1;
    for (std::int64_t p = 2; p * p <= n; ++p)
      if (n % p == 0) prime = false;
    if (prime) primes.push_back(n);
  }
  const auto r = find_unit_subsets(IntSet::of(primes), 4,
                                   SearchMethod::MeetInMiddle);
  CHECK(r.method == SearchMethod::BranchAndBound);
  CHECK(r.exact);
}

TEST_CASE("expsum method counts without witnesses") {
  const auto r = find_unit_subsets(IntSet::of({2, 3, 4, 6, 12}), 16,
                                   SearchMethod::ExpSum);
  CHECK(r.method == SearchMethod::ExpSum);
  CHECK(r.count == 2);
  CHECK(r.witnesses.empty());
  CHECK(r.exact);
}

TEST_CASE("node budget exhaustion reports an inexact lower bound") {
  SearchBudget tiny;
  tiny.max_nodes = 3;
  const auto r = find_unit_subsets(IntSet::of({2, 3, 4, 6, 12}), 16,
                                   SearchMethod::BranchAndBound, tiny);
  CHECK_FALSE(r.exact);
  CHECK(r.count <= 2);
  for (const auto& w : r.witnesses) CHECK(sum_unit_fractions(w) == Rational(1));
}

TEST_CASE("element budget violations throw") {
  SearchBudget budget;
  budget.max_elements = 4;
  CHECK_THROWS_AS(find_unit_subsets(IntSet::of({2, 3, 4, 6, 12}), 16,
                                    SearchMethod::BranchAndBound, budget),
                  std::invalid_argument);
}
