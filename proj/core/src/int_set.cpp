#include "unitfrac/int_set.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace unitfrac {

namespace {

// Pairwise summation of unit fractions on unnormalized (num, den) pairs.
// cpp_rational normalizes on every assignment, which is quadratic when
// summing a long run of 1/n terms one at a time; here gcd runs once at
// the end.
std::pair<BigInt, BigInt> merge_range(std::span<const std::int64_t> values,
                                      std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return {BigInt(1), BigInt(values[lo])};
  std::size_t mid = lo + (hi - lo) / 2;
  auto [an, ad] = merge_range(values, lo, mid);
  auto [bn, bd] = merge_range(values, mid, hi);
  return {an * bd + bn * ad, ad * bd};
}

}  // namespace

Rational sum_unit_fractions(std::span<const std::int64_t> values) {
  if (values.empty()) return Rational(0);
  auto [num, den] = merge_range(values, 0, values.size());
  return Rational(num, den);
}

IntSet IntSet::of(std::span<const std::int64_t> values) {
  std::vector<std::int64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<FactoredInt> elems;
  elems.reserve(sorted.size());
  for (auto v : sorted) elems.push_back(FactoredInt::of(v));
  return IntSet::of(std::move(elems));
}

IntSet IntSet::of(std::initializer_list<std::int64_t> values) {
  return IntSet::of(std::span<const std::int64_t>(values.begin(), values.size()));
}

IntSet IntSet::of(std::vector<FactoredInt> elements) {
  std::sort(elements.begin(), elements.end(),
            [](const FactoredInt& a, const FactoredInt& b) {
              return a.value() < b.value();
            });
  elements.erase(std::unique(elements.begin(), elements.end(),
                             [](const FactoredInt& a, const FactoredInt& b) {
                               return a.value() == b.value();
                             }),
                 elements.end());
  IntSet s;
  s.elements_ = std::move(elements);
  s.build_caches();
  return s;
}

void IntSet::build_caches() {
  std::vector<std::int64_t> vals;
  vals.reserve(elements_.size());
  for (const auto& e : elements_) vals.push_back(e.value());
  recip_sum_ = sum_unit_fractions(vals);

  std::set<std::int64_t> q_all, q_max;
  // prime -> largest power appearing as a maximal power of some element
  std::map<std::int64_t, BigInt> top_power;
  for (const auto& e : elements_) {
    for (auto q : e.prime_powers(PowerMode::All)) q_all.insert(q);
    for (auto q : e.prime_powers(PowerMode::Maximal)) q_max.insert(q);
    for (const auto& pp : e.factors()) {
      BigInt power = 1;
      for (int i = 0; i < pp.exponent; ++i) power *= pp.prime;
      auto it = top_power.find(pp.prime);
      if (it == top_power.end() || it->second < power) top_power[pp.prime] = power;
    }
  }
  q_all_.assign(q_all.begin(), q_all.end());
  q_maximal_.assign(q_max.begin(), q_max.end());
  sigma_all_ = sum_unit_fractions(q_all_);
  sigma_maximal_ = sum_unit_fractions(q_maximal_);
  lcm_ = 1;
  for (const auto& [p, power] : top_power) lcm_ *= power;
}

std::vector<std::int64_t> IntSet::values() const {
  std::vector<std::int64_t> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.value());
  return out;
}

bool IntSet::contains(std::int64_t v) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), v,
                             [](const FactoredInt& e, std::int64_t x) {
                               return e.value() < x;
                             });
  return it != elements_.end() && it->value() == v;
}

std::int64_t IntSet::min_value() const {
  if (elements_.empty()) throw std::domain_error("min_value of empty set");
  return elements_.front().value();
}

std::int64_t IntSet::max_value() const {
  if (elements_.empty()) throw std::domain_error("max_value of empty set");
  return elements_.back().value();
}

const std::vector<std::int64_t>& IntSet::prime_powers(PowerMode mode) const {
  return mode == PowerMode::All ? q_all_ : q_maximal_;
}

const Rational& IntSet::prime_power_recip_sum(PowerMode mode) const {
  if (elements_.empty())
    throw std::domain_error("prime_power_recip_sum of empty set");
  return mode == PowerMode::All ? sigma_all_ : sigma_maximal_;
}

const BigInt& IntSet::lcm() const {
  if (elements_.empty()) throw std::domain_error("lcm of empty set");
  return lcm_;
}

Rational IntSet::recip_sum_of_multiples(std::int64_t q) const {
  std::vector<std::int64_t> vals;
  for (const auto& e : elements_)
    if (e.value() % q == 0) vals.push_back(e.value());
  return sum_unit_fractions(vals);
}

std::vector<std::int64_t> IntSet::multiples_of(std::int64_t q) const {
  std::vector<std::int64_t> vals;
  for (const auto& e : elements_)
    if (e.value() % q == 0) vals.push_back(e.value());
  return vals;
}

IntSet IntSet::without_value(std::int64_t v) const {
  return filter([&](const FactoredInt& e) { return e.value() != v; });
}

IntSet IntSet::without_multiples_of(std::int64_t q) const {
  return filter([&](const FactoredInt& e) { return e.value() % q != 0; });
}

IntSet IntSet::set_minus(const IntSet& other) const {
  return filter([&](const FactoredInt& e) { return !other.contains(e.value()); });
}

IntSet IntSet::set_union(const IntSet& other) const {
  std::vector<FactoredInt> merged = elements_;
  for (const auto& e : other.elements()) merged.push_back(e);
  return IntSet::of(std::move(merged));
}

}  // namespace unitfrac
