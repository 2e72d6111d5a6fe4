#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/integer/common_factor.hpp>

#include "unitfrac/int_set.hpp"

using namespace unitfrac;

TEST_CASE("construction sorts and dedups") {
  const auto s = IntSet::of({12, 4, 6, 4, 12});
  CHECK(s.values() == std::vector<std::int64_t>{4, 6, 12});
  CHECK(s.size() == 3);
  CHECK(s.contains(6));
  CHECK_FALSE(s.contains(5));
  CHECK(s.min_value() == 4);
  CHECK(s.max_value() == 12);
  CHECK(IntSet::of({2, 3}) == IntSet::of({3, 2}));
}

TEST_CASE("recip_sum examples") {
  CHECK(IntSet::of({2, 3, 6}).recip_sum() == Rational(1));
  CHECK(IntSet{}.recip_sum() == Rational(0));
  CHECK(IntSet::of({2, 3, 4, 6, 12}).recip_sum() == Rational(4, 3));
  CHECK(IntSet::of({2}).recip_sum() == Rational(1, 2));
}

TEST_CASE("prime power reciprocal sums by mode") {
  const auto a = IntSet::of({12, 10});
  // Q_all = {2, 3, 4, 5}: 1/2 + 1/3 + 1/4 + 1/5 = 77/60
  CHECK(a.prime_powers(PowerMode::All) == std::vector<std::int64_t>{2, 3, 4, 5});
  CHECK(a.prime_power_recip_sum(PowerMode::All) == Rational(77, 60));

  const auto b = IntSet::of({7});
  CHECK(b.prime_power_recip_sum(PowerMode::All) == Rational(1, 7));

  const auto c = IntSet::of({4, 6, 12});
  // maximal powers: 4 -> {4}; 6 -> {2, 3}; 12 -> {3, 4}; union {2, 3, 4}
  CHECK(c.prime_powers(PowerMode::Maximal) == std::vector<std::int64_t>{2, 3, 4});
  CHECK(c.prime_power_recip_sum(PowerMode::Maximal) == Rational(13, 12));

  CHECK_THROWS_AS(IntSet{}.prime_power_recip_sum(), std::domain_error);
}

TEST_CASE("lcm examples") {
  CHECK(IntSet::of({2, 3, 6}).lcm() == 6);
  CHECK(IntSet::of({4, 6}).lcm() == 12);
  std::vector<std::int64_t> two_to_ten;
  for (std::int64_t n = 2; n <= 10; ++n) two_to_ten.push_back(n);
  CHECK(IntSet::of(two_to_ten).lcm() == 2520);
  CHECK_THROWS_AS(IntSet{}.lcm(), std::domain_error);
}

TEST_CASE("lcm equals fold over elements and over maximal prime powers") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> value(2, 5000);
  std::uniform_int_distribution<int> count(1, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::int64_t> vals;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) vals.push_back(value(rng));
    const auto s = IntSet::of(vals);

    BigInt by_elements = 1;
    for (auto v : s.values()) by_elements = boost::integer::lcm(by_elements, BigInt(v));
    BigInt by_powers = 1;
    for (auto q : s.prime_powers(PowerMode::Maximal))
      by_powers = boost::integer::lcm(by_powers, BigInt(q));

    REQUIRE(s.lcm() == by_elements);
    REQUIRE(s.lcm() == by_powers);
  }
}

TEST_CASE("sigma over all powers dominates sigma over maximal powers") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::int64_t> value(2, 100000);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::int64_t> vals;
    for (int i = 0; i < 8; ++i) vals.push_back(value(rng));
    const auto s = IntSet::of(vals);
    REQUIRE(s.prime_power_recip_sum(PowerMode::All) >=
            s.prime_power_recip_sum(PowerMode::Maximal));
  }
}

TEST_CASE("recip_sum is permutation and summation-order invariant") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> value(2, 10000);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> vals;
    for (int i = 0; i < 20; ++i) vals.push_back(value(rng));
    const auto s = IntSet::of(vals);

    std::shuffle(vals.begin(), vals.end(), rng);
    const auto t = IntSet::of(vals);
    REQUIRE(s == t);
    REQUIRE(s.recip_sum() == t.recip_sum());

    // left-to-right fold as an independent oracle for the pairwise merge
    Rational fold = 0;
    for (auto v : s.values()) fold += Rational(1, v);
    REQUIRE(s.recip_sum() == fold);
    REQUIRE(sum_unit_fractions(s.values()) == fold);
  }
}

TEST_CASE("multiples and their reciprocal sums") {
  const auto s = IntSet::of({2, 3, 4, 6, 12, 25});
  CHECK(s.multiples_of(2) == std::vector<std::int64_t>{2, 4, 6, 12});
  CHECK(s.multiples_of(5) == std::vector<std::int64_t>{25});
  CHECK(s.multiples_of(7).empty());
  CHECK(s.recip_sum_of_multiples(2) == Rational(1));
  CHECK(s.recip_sum_of_multiples(3) == Rational(7, 12));
  CHECK(s.recip_sum_of_multiples(5) == Rational(1, 25));
  CHECK(s.recip_sum_of_multiples(7) == Rational(0));
}

TEST_CASE("set algebra") {
  const auto s = IntSet::of({2, 3, 4, 6, 12});
  CHECK(s.without_value(4).values() == std::vector<std::int64_t>{2, 3, 6, 12});
  CHECK(s.without_value(99) == s);
  CHECK(s.without_multiples_of(2).values() == std::vector<std::int64_t>{3});
  CHECK(s.set_minus(IntSet::of({3, 12})).values() ==
        std::vector<std::int64_t>{2, 4, 6});
  CHECK(s.set_union(IntSet::of({5, 6})).values() ==
        std::vector<std::int64_t>{2, 3, 4, 5, 6, 12});
  CHECK(s.filter([](const FactoredInt& f) { return f.value() % 2 == 0; }).values() ==
        std::vector<std::int64_t>{2, 4, 6, 12});
}

TEST_CASE("pairwise summation matches fold on long harmonic runs") {
  std::vector<std::int64_t> vals;
  for (std::int64_t n = 2; n <= 2000; ++n) vals.push_back(n);
  Rational fold = 0;
  for (auto v : vals) fold += Rational(1, v);
  CHECK(sum_unit_fractions(vals) == fold);
}
