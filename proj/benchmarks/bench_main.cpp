#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "unitfrac/dickman.hpp"
#include "unitfrac/exp_sum.hpp"
#include "unitfrac/int_set.hpp"
#include "unitfrac/smooth_sieve.hpp"
#include "unitfrac/subset_search.hpp"

namespace {

using namespace unitfrac;

std::vector<std::int64_t> seeded_set(int k, std::int64_t hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(2, hi);
  std::vector<std::int64_t> out;
  while (static_cast<int>(out.size()) < k) {
    const auto v = dist(rng);
    bool dup = false;
    for (auto x : out) dup = dup || x == v;
    if (!dup) out.push_back(v);
  }
  return out;
}

void BM_SieveSegment(benchmark::State& state) {
  const std::int64_t span = state.range(0);
  for (auto _ : state) {
    auto s = smooth_in_range({1000, 1000 + span, 50});
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * span);
}
BENCHMARK(BM_SieveSegment)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20);

void BM_CountSmooth(benchmark::State& state) {
  for (auto _ : state) {
    auto n = count_prime_smooth(state.range(0), 100);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_CountSmooth)->Arg(100000)->Arg(1000000);

void BM_SubsetSearch(benchmark::State& state) {
  const auto vals = seeded_set(static_cast<int>(state.range(0)), 60, 7);
  const auto s = IntSet::of(vals);
  const auto method = state.range(1) == 0 ? SearchMethod::BranchAndBound
                                          : SearchMethod::MeetInMiddle;
  for (auto _ : state) {
    auto r = find_unit_subsets(s, 8, method);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SubsetSearch)
    ->ArgsProduct({{12, 16, 20}, {0, 1}})
    ->ArgNames({"size", "mitm"});

void BM_ExpSumCount(benchmark::State& state) {
  std::vector<std::int64_t> vals;
  for (std::int64_t d = 2; d <= 2520 && static_cast<int>(vals.size()) <
                                             static_cast<int>(state.range(0));
       ++d)
    if (2520 % d == 0) vals.push_back(d);
  const auto s = IntSet::of(vals);
  for (auto _ : state) {
    auto r = count_by_exponential_sum(s, 1'000'000, state.range(1));
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExpSumCount)
    ->ArgsProduct({{10, 20, 30}, {1, 4}})
    ->ArgNames({"size", "threads"});

void BM_RhoBuild(benchmark::State& state) {
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto t = RhoTable::build(20.0, 1e-8, step);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_RhoBuild)->Arg(1000)->Arg(10000)->ArgNames({"inv_step"});

}  // namespace

BENCHMARK_MAIN();
