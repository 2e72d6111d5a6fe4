#pragma once

#include <cstdint>
#include <vector>

namespace unitfrac {

/// Which prime powers of n count as divisors: every p^j with j <= a, or
/// only the maximal p^a exactly dividing n. Reciprocal sums over prime
/// power sets default to All; smoothness bounds always use Maximal.
enum class PowerMode { All, Maximal };

struct PrimePower {
  std::int64_t prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// An integer >= 2 carrying its full prime factorization.
/// Factorization is deterministic: smallest-prime-factor table below the
/// sieve limit, trial division by sieved primes, then Brent cycle splitting
/// with a fixed parameter schedule for the rest of the 64-bit range.
class FactoredInt {
 public:
  FactoredInt() = default;

  /// Factorizes n. Throws std::domain_error for n < 2.
  static FactoredInt of(std::int64_t n);

  std::int64_t value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

  /// Number of distinct prime divisors.
  int omega() const { return static_cast<int>(factors_.size()); }
  /// Number of prime divisors counted with multiplicity.
  int big_omega() const;

  /// Prime powers dividing value(), ascending. Mode All lists every p^j,
  /// Mode Maximal only the exact powers p^a.
  std::vector<std::int64_t> prime_powers(PowerMode mode) const;

  /// Largest p^a with p^a exactly dividing value().
  std::int64_t max_prime_power() const;

  /// True iff every maximal prime power divisor is <= bound.
  bool is_smooth(std::int64_t bound) const;

  friend bool operator==(const FactoredInt&, const FactoredInt&) = default;
  friend auto operator<=>(const FactoredInt& a, const FactoredInt& b) {
    return a.value_ <=> b.value_;
  }

 private:
  std::int64_t value_ = 0;
  std::vector<PrimePower> factors_;
};

/// Deterministic 64-bit primality test.
bool is_prime(std::int64_t n);

/// Primes up to limit (inclusive), ascending.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

}  // namespace unitfrac
