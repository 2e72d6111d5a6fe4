#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "unitfrac/factored.hpp"
#include "unitfrac/rational.hpp"

namespace unitfrac {

/// A finite set of integers >= 2 with cached factorizations, prime power
/// sets, exact reciprocal sum, exact prime-power reciprocal sum, and lcm.
/// Immutable after construction; all "mutators" return new sets, so values
/// can be shared freely across threads.
class IntSet {
 public:
  IntSet() = default;

  static IntSet of(std::span<const std::int64_t> values);
  static IntSet of(std::initializer_list<std::int64_t> values);
  /// Takes pre-factored elements (the sieve already knows the factorizations).
  static IntSet of(std::vector<FactoredInt> elements);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<FactoredInt>& elements() const { return elements_; }
  std::vector<std::int64_t> values() const;
  bool contains(std::int64_t v) const;
  const FactoredInt& at(std::size_t i) const { return elements_[i]; }
  std::int64_t min_value() const;
  std::int64_t max_value() const;

  /// Exact sum of 1/n over elements; 0 for the empty set.
  const Rational& recip_sum() const { return recip_sum_; }

  /// Union of prime power divisors of all elements, ascending.
  const std::vector<std::int64_t>& prime_powers(PowerMode mode = PowerMode::All) const;

  /// Exact sum of 1/q over prime_powers(mode). Throws std::domain_error on
  /// an empty set.
  const Rational& prime_power_recip_sum(PowerMode mode = PowerMode::All) const;

  /// Least common multiple of the elements. Throws std::domain_error on an
  /// empty set.
  const BigInt& lcm() const;

  /// Exact sum of 1/n over elements divisible by q.
  Rational recip_sum_of_multiples(std::int64_t q) const;

  /// Elements divisible by q.
  std::vector<std::int64_t> multiples_of(std::int64_t q) const;

  IntSet without_value(std::int64_t v) const;
  IntSet without_multiples_of(std::int64_t q) const;
  /// Elements of this set that are not in other.
  IntSet set_minus(const IntSet& other) const;
  IntSet set_union(const IntSet& other) const;
  template <typename Pred>
  IntSet filter(Pred&& keep) const {
    std::vector<FactoredInt> kept;
    for (const auto& e : elements_)
      if (keep(e)) kept.push_back(e);
    return IntSet::of(std::move(kept));
  }

  friend bool operator==(const IntSet& a, const IntSet& b) {
    return a.elements_ == b.elements_;
  }

 private:
  void build_caches();

  std::vector<FactoredInt> elements_;  // ascending, distinct
  std::vector<std::int64_t> q_all_;
  std::vector<std::int64_t> q_maximal_;
  Rational recip_sum_;
  Rational sigma_all_;
  Rational sigma_maximal_;
  BigInt lcm_ = 1;
};

/// Exact Σ 1/v over the given values via pairwise merging (one final
/// normalization instead of one per addition).
Rational sum_unit_fractions(std::span<const std::int64_t> values);

}  // namespace unitfrac
