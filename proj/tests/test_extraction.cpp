#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "unitfrac/extraction.hpp"
#include "unitfrac/int_set.hpp"
#include "unitfrac/logs.hpp"
#include "unitfrac/rational.hpp"

using namespace unitfrac;

namespace {

DensityParams params_with(std::int64_t scale, double theta = 0.1) {
  DensityParams p;
  p.scale = scale;
  p.theta = theta;
  return p;
}

std::vector<std::int64_t> flatten_removed(const std::vector<PruneStep>& steps) {
  std::vector<std::int64_t> out;
  for (const auto& s : steps)
    out.insert(out.end(), s.removed.begin(), s.removed.end());
  return out;
}

IntSet random_subset(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi,
                     int k) {
  std::set<std::int64_t> s;
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  while (static_cast<int>(s.size()) < k) s.insert(dist(rng));
  return IntSet::of(std::vector<std::int64_t>(s.begin(), s.end()));
}

}  // namespace

TEST_CASE("density params validation") {
  DensityParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.ll() == doctest::Approx(loglog(1000.0)));
  p.loglog_term = 2.5;
  CHECK(p.ll() == 2.5);

  CHECK_THROWS_AS(params_with(1).validate(), std::domain_error);
  auto bad = params_with(100);
  bad.loglog_term = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = params_with(100, 0.0);
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = params_with(100);
  bad.delta = -0.5;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  auto strict = params_with(100, 0.2);
  strict.delta = 0.1;
  strict.strict = true;
  CHECK_THROWS_AS(strict.validate(), std::domain_error);  // 0.3 >= 1/4
  strict.delta = 0.04;
  CHECK_NOTHROW(strict.validate());
}

TEST_CASE("pruning keeps a dense set untouched") {
  const auto s = IntSet::of({2, 3, 4, 6, 12});
  const auto r = prune_sparse_prime_powers(s, Rational(4, 3), Rational(1, 3),
                                           params_with(100));
  CHECK(r.ok);
  CHECK(r.steps.empty());
  CHECK(r.kept == s);
  CHECK(r.status == "ok");
}

TEST_CASE("pruning removes the sparse prime power and rescans") {
  const auto s = IntSet::of({2, 3, 4, 6, 12, 25});
  const auto r = prune_sparse_prime_powers(s, Rational(4, 3), Rational(1, 3),
                                           params_with(100));
  CHECK(r.ok);
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].q == 5);
  CHECK(r.steps[0].removed == std::vector<std::int64_t>{25});
  CHECK(r.kept == IntSet::of({2, 3, 4, 6, 12}));
}

TEST_CASE("pruning can empty the set; that is data, not an error") {
  auto p = params_with(100);
  p.loglog_term = 0.01;  // tiny density factor, every singleton is sparse
  const auto s = IntSet::of({11, 13, 17, 19, 23});
  const auto r =
      prune_sparse_prime_powers(s, Rational(8, 25), Rational(1, 100), p);
  CHECK_FALSE(r.ok);
  CHECK(r.kept.empty());
  REQUIRE(r.steps.size() == 5);
  CHECK(r.steps[0].q == 11);  // ascending rescan order
  CHECK(r.steps[4].q == 23);
  CHECK(r.status.find("not above") != std::string::npos);
}

TEST_CASE("pruning preconditions throw") {
  const auto s = IntSet::of({2, 3, 6});
  const auto p = params_with(100);
  CHECK_THROWS_AS(prune_sparse_prime_powers(s, Rational(1, 3), Rational(1, 2), p),
                  std::invalid_argument);  // rho <= mu
  CHECK_THROWS_AS(prune_sparse_prime_powers(s, Rational(2), Rational(1), p),
                  std::invalid_argument);  // sum below rho
  CHECK_THROWS_AS(prune_sparse_prime_powers(IntSet::of({64}), Rational(1, 100),
                                            Rational(1, 200), params_with(50)),
                  std::invalid_argument);  // prime power 64 at or above scale
}

TEST_CASE("pruning postconditions hold on random sets") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> size_dist(5, 12);
  const auto params = params_with(100);
  const Rational llr = rational_from_double(params.ll());
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = random_subset(rng, 2, 99, size_dist(rng));
    const Rational rho = s.recip_sum() * Rational(3, 4);
    const Rational mu = rho / 2;
    if (!(rho > mu)) continue;
    const auto r = prune_sparse_prime_powers(s, rho, mu, params);

    // conservation: kept plus everything removed is the input
    auto removed = flatten_removed(r.steps);
    auto rebuilt = r.kept.values();
    rebuilt.insert(rebuilt.end(), removed.begin(), removed.end());
    REQUIRE(IntSet::of(rebuilt) == s);

    // every surviving prime power clears the removal threshold
    const Rational gap = rho - mu;
    for (auto q : r.kept.prime_powers(PowerMode::All))
      REQUIRE(r.kept.recip_sum_of_multiples(q) * (2 * q) * llr > gap);
    REQUIRE(r.ok == (r.kept.recip_sum() > mu));
  }
}

TEST_CASE("window extraction reaches the window by one removal") {
  auto p = params_with(129);
  p.alpha = Rational(1019, 13440);
  p.nu = Rational(1, 16);
  const auto j = IntSet::of({60, 63, 84, 126, 64, 128});
  REQUIRE(j.recip_sum() == p.alpha);
  const auto r = extract_window_subset(j, p);
  CHECK(r.ok);
  CHECK(r.status == "ok");
  CHECK(r.initial_prune.empty());
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].prune_steps.empty());
  CHECK(r.steps[0].removed == 60);
  CHECK(r.kept == IntSet::of({63, 84, 126, 64, 128}));
  CHECK(r.kept.recip_sum() == Rational(53, 896));
  CHECK(r.kept.recip_sum() >= p.nu - Rational(1, 129));
  CHECK(r.kept.recip_sum() < p.nu);
}

TEST_CASE("window extraction second stage peels down to the pair core") {
  auto p = params_with(129);
  p.alpha = Rational(1, 28);
  p.nu = Rational(1, 40);
  const auto r = extract_window_subset(IntSet::of({63, 84, 126}), p);
  CHECK(r.ok);
  CHECK(r.kept == IntSet::of({84, 126}));
  CHECK(r.kept.recip_sum() == Rational(5, 252));
}

TEST_CASE("window overshoot is reported") {
  auto p = params_with(30);
  p.alpha = Rational(47, 60);
  p.nu = Rational(7, 10);
  const auto r = extract_window_subset(IntSet::of({3, 4, 5}), p);
  CHECK_FALSE(r.ok);
  CHECK(r.status.find("window overshoot") != std::string::npos);
  CHECK(r.kept == IntSet::of({4, 5}));
}

TEST_CASE("window extraction can prune to the empty set") {
  auto p = params_with(20);
  p.alpha = Rational(4, 3);
  p.nu = Rational(11, 10);
  p.loglog_term = 0.26;  // singleton removal fires only at the nu/2 gap
  const auto r = extract_window_subset(IntSet::of({2, 3, 5, 7, 11, 13}), p);
  CHECK_FALSE(r.ok);
  CHECK(r.status.find("pruned to the empty set") != std::string::npos);
  CHECK(r.kept.empty());
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].prune_steps.size() == 6);
  CHECK(r.steps[0].prune_steps.front().q == 2);
}

TEST_CASE("window density re-scan can fail after the removal step") {
  // 970 survives pruning behind the weight of 10, but once 10 is removed
  // the prime power 2 is left with reciprocal mass 1/970 only.
  auto p = params_with(130);
  const auto j = IntSet::of({10, 11, 13, 970});
  p.alpha = j.recip_sum();
  p.nu = Rational(17, 100);
  const auto r = extract_window_subset(j, p);
  CHECK_FALSE(r.ok);
  CHECK(r.status.find("density verification failed at prime power 2") !=
        std::string::npos);
  CHECK(r.kept == IntSet::of({11, 13, 970}));
}

TEST_CASE("window extraction preconditions throw") {
  auto p = params_with(100);
  p.alpha = Rational(0);
  p.nu = Rational(2);
  CHECK_THROWS_AS(extract_window_subset(IntSet::of({2, 3}), p),
                  std::invalid_argument);  // alpha <= nu
  p.alpha = Rational(10);
  p.nu = Rational(1);
  CHECK_THROWS_AS(extract_window_subset(IntSet::of({2, 3}), p),
                  std::invalid_argument);  // sum below alpha
}

TEST_CASE("window extraction contract holds on random sets") {
  std::mt19937_64 rng(72);
  std::uniform_int_distribution<int> size_dist(6, 14);
  int completed = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto j = random_subset(rng, 10, 99, size_dist(rng));
    auto p = params_with(100);
    p.alpha = j.recip_sum();
    p.nu = p.alpha / 2;
    if (!(p.nu > 0)) continue;
    const auto r = extract_window_subset(j, p);
    REQUIRE_FALSE(r.status.empty());
    if (!r.ok) continue;
    ++completed;
    const Rational sum = r.kept.recip_sum();
    REQUIRE(sum >= p.nu - Rational(1, p.scale));
    REQUIRE(sum < p.nu);
    // independent re-check of the density conclusion
    const Rational upper = p.alpha - p.nu;
    const Rational bound = std::min(p.nu, upper);
    const Rational llr = rational_from_double(p.ll());
    for (auto q : r.kept.prime_powers(PowerMode::All))
      REQUIRE(r.kept.recip_sum_of_multiples(q) * (5 * q) * llr > bound);
  }
  CHECK(completed > 0);
}

TEST_CASE("non-divisor counting") {
  CHECK(count_non_divisors(IntSet::of({2, 3}), {6, 6}) == 0);
  CHECK(count_non_divisors(IntSet::of({4}), {5, 7}) == 1);
  CHECK(count_non_divisors(IntSet::of({2, 3, 5}), {7, 9}) == 1);
  CHECK(count_non_divisors(IntSet{}, {5, 9}) == 0);
  CHECK_THROWS_AS(count_non_divisors(IntSet::of({2}), {5, 3}),
                  std::invalid_argument);
}

TEST_CASE("interval classification: single") {
  DensityParams p;  // scale 1000
  auto out = classify_interval(IntSet::of({2, 3, 6}), {6, 6}, p);
  CHECK(out.kind == IntervalCase::Single);
  CHECK(out.hypothesis_ok);
  CHECK(out.w == 6);

  out = classify_interval(IntSet::of({4, 9}), {35, 37}, p);
  CHECK(out.kind == IntervalCase::Single);
  CHECK(out.w == 36);
}

TEST_CASE("interval classification: pair witnesses") {
  auto out = classify_interval(IntSet::of({2, 3, 6}), {7, 11},
                               params_with(50, 0.2));
  CHECK(out.kind == IntervalCase::Pair);
  CHECK(out.hypothesis_ok);
  CHECK(out.non_divisor_count == 1);  // nothing in [7, 11] is a multiple of 6
  CHECK(out.w1 == 8);
  CHECK(out.w2 == 9);

  out = classify_interval(IntSet::of({63, 84, 126, 64, 128}), {250, 260},
                          params_with(129, 0.3));
  CHECK(out.kind == IntervalCase::Pair);
  CHECK(out.w1 == 252);
  CHECK(out.w2 == 256);
}

TEST_CASE("interval classification: failure modes") {
  auto tiny = params_with(2, 0.9);
  auto out = classify_interval(IntSet::of({3, 5, 7, 11}), {2, 2}, tiny);
  CHECK(out.kind == IntervalCase::Neither);
  CHECK_FALSE(out.hypothesis_ok);
  CHECK(out.non_divisor_count == 4);
  CHECK(out.note.find("divisor hypothesis failed") != std::string::npos);

  DensityParams p;
  out = classify_interval(IntSet::of({4, 9}), {37, 71}, p, 10);
  CHECK(out.kind == IntervalCase::Neither);
  CHECK(out.hypothesis_ok);
  CHECK(out.note.find("pair search skipped") != std::string::npos);

  out = classify_interval(IntSet::of({4, 9}), {37, 43}, p);
  CHECK(out.kind == IntervalCase::Neither);
  CHECK(out.note == "no qualifying pair");

  CHECK_THROWS_AS(classify_interval(IntSet{}, {2, 4}, p), std::invalid_argument);
  CHECK_THROWS_AS(classify_interval(IntSet::of({2}), {4, 2}, p),
                  std::invalid_argument);
}

TEST_CASE("dense divisor search") {
  const auto e = IntSet::of({50, 100, 150, 200});
  const auto p = params_with(100, 0.25);
  const auto d = find_dense_divisor(e, 2, p);
  REQUIRE(d.has_value());
  CHECK(*d == 25);  // 20 = 2^2 * 5 is skipped for too many prime factors

  CHECK_FALSE(find_dense_divisor(e, 7, p).has_value());
  CHECK_FALSE(find_dense_divisor(e, 2, p, 1e18).has_value());
  CHECK_THROWS_AS(find_dense_divisor(e, 1, p), std::invalid_argument);
}

namespace {

PipelineConfig pair_route_config() {
  PipelineConfig cfg;
  cfg.user_h = {255};
  cfg.interval_budget = 1;
  cfg.entry_threshold = Rational(1, 15);
  cfg.first_window = Rational(1, 16);
  cfg.second_window = Rational(1, 40);
  cfg.stop_threshold = Rational(3, 50);
  return cfg;
}

const nlohmann::json* find_step(const nlohmann::json& trace,
                                const std::string& step) {
  for (const auto& entry : trace)
    if (entry.contains("step") && entry["step"] == step) return &entry;
  return nullptr;
}

}  // namespace

TEST_CASE("pipeline pair route peels one piece and stops short of a merge") {
  const auto c = IntSet::of({60, 63, 84, 126, 64, 128});
  const auto r =
      run_extraction_pipeline(c, params_with(129, 0.3), pair_route_config());
  CHECK_FALSE(r.ok);
  CHECK(r.status.find("merging needs three") != std::string::npos);
  CHECK(r.intervals_tested == 1);
  CHECK(r.intervals_hypothesis_ok == 1);
  REQUIRE(r.removed_sets.size() == 1);
  CHECK(r.removed_sets[0] == IntSet::of({84, 126}));

  const auto* classify = find_step(r.trace, "classify");
  REQUIRE(classify != nullptr);
  CHECK((*classify)["kind"] == "pair");

  const auto* restrict_step = find_step(r.trace, "restrict");
  REQUIRE(restrict_step != nullptr);
  CHECK((*restrict_step)["w1"] == 252);
  CHECK((*restrict_step)["w2"] == 256);
  CHECK((*restrict_step)["chosen"] == 252);  // heavier reciprocal mass
  CHECK((*restrict_step)["restricted_size"] == 3);

  const auto* peel = find_step(r.trace, "peel");
  REQUIRE(peel != nullptr);
  CHECK((*peel)["remaining_sum"] == to_string(Rational(2257, 40320)));
  CHECK(find_step(r.trace, "halt") != nullptr);
}

TEST_CASE("pipeline single route concludes with the extracted set") {
  const auto c = IntSet::of({60, 63, 84, 126, 64, 128});
  auto cfg = pair_route_config();
  cfg.user_h = {8064};  // lcm of the extracted set lands in this interval
  const auto r = run_extraction_pipeline(c, params_with(129, 0.3), cfg);
  CHECK(r.ok);
  CHECK(r.status == "single case held on every tested interval");
  CHECK(r.d == IntSet::of({63, 84, 126, 64, 128}));
  CHECK(r.removed_sets.empty());
  const auto* classify = find_step(r.trace, "classify");
  REQUIRE(classify != nullptr);
  CHECK((*classify)["kind"] == "single");
  CHECK(find_step(r.trace, "conclude") != nullptr);
}

TEST_CASE("pipeline entry threshold throws") {
  auto cfg = pair_route_config();
  cfg.entry_threshold = Rational(1);
  CHECK_THROWS_AS(run_extraction_pipeline(IntSet::of({60, 63, 84, 126, 64, 128}),
                                          params_with(129, 0.3), cfg),
                  std::invalid_argument);
}

TEST_CASE("pipeline runs are deterministic") {
  const auto c = IntSet::of({60, 63, 84, 126, 64, 128});
  const auto p = params_with(129, 0.3);
  const auto a = run_extraction_pipeline(c, p, pair_route_config());
  const auto b = run_extraction_pipeline(c, p, pair_route_config());
  CHECK(a.ok == b.ok);
  CHECK(a.status == b.status);
  CHECK(a.trace == b.trace);
  CHECK(a.d == b.d);
}
