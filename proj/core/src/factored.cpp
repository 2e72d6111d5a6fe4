#include "unitfrac/factored.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace unitfrac {
namespace {

constexpr std::int64_t kSpfLimit = 1 << 20;

// Smallest prime factor for every n < kSpfLimit. Built once, shared.
const std::vector<std::int32_t>& spf_table() {
  static const std::vector<std::int32_t> table = [] {
    std::vector<std::int32_t> spf(kSpfLimit, 0);
    for (std::int64_t i = 2; i < kSpfLimit; ++i) {
      if (spf[i] == 0) {
        for (std::int64_t j = i; j < kSpfLimit; j += i) {
          if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
        }
      }
    }
    return spf;
  }();
  return table;
}

const std::vector<std::int64_t>& small_primes() {
  static const std::vector<std::int64_t> primes = primes_up_to(kSpfLimit - 1);
  return primes;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool miller_rabin(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // This base set decides primality for all 64-bit integers.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's cycle variant with a fixed c schedule, so splits are reproducible.
u64 pollard_brent(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 v) { return static_cast<u64>((u128(v) * v + c) % n); };
    u64 y = 2, g = 1, r = 1, q = 1, x = 0, ys = 0;
    const u64 m = 128;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        const u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      // batched gcd overshot the factor; replay one step at a time
      g = 1;
      y = ys;
      while (g == 1) {
        y = f(y);
        g = std::gcd(x > y ? x - y : y - x, n);
      }
    }
    if (g != n) return g;
    // cycle collapsed for this c; retry with the next one
  }
}

void factor_recursive(u64 n, std::vector<std::int64_t>& out) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    out.push_back(static_cast<std::int64_t>(n));
    return;
  }
  const u64 d = pollard_brent(n);
  factor_recursive(d, out);
  factor_recursive(n / d, out);
}

}  // namespace

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (!composite[static_cast<std::size_t>(i)]) {
      primes.push_back(i);
      for (std::int64_t j = i * i; j >= 0 && j <= limit; j += i)
        composite[static_cast<std::size_t>(j)] = true;
    }
  }
  return primes;
}

bool is_prime(std::int64_t n) { return n >= 2 && miller_rabin(static_cast<u64>(n)); }

FactoredInt FactoredInt::of(std::int64_t n) {
  if (n < 2) throw std::domain_error("FactoredInt: value must be >= 2");
  FactoredInt f;
  f.value_ = n;

  std::int64_t rest = n;
  if (rest < kSpfLimit) {
    const auto& spf = spf_table();
    while (rest > 1) {
      const std::int64_t p = spf[static_cast<std::size_t>(rest)];
      int e = 0;
      while (rest % p == 0) rest /= p, ++e;
      f.factors_.push_back({p, e});
    }
    return f;
  }

  for (const std::int64_t p : small_primes()) {
    if (p * p > rest) break;
    if (rest % p == 0) {
      int e = 0;
      while (rest % p == 0) rest /= p, ++e;
      f.factors_.push_back({p, e});
      if (rest < kSpfLimit) break;
    }
  }
  if (rest > 1 && rest < kSpfLimit) {
    const auto& spf = spf_table();
    while (rest > 1) {
      const std::int64_t p = spf[static_cast<std::size_t>(rest)];
      int e = 0;
      while (rest % p == 0) rest /= p, ++e;
      f.factors_.push_back({p, e});
    }
  } else if (rest > 1) {
    std::vector<std::int64_t> large;
    factor_recursive(static_cast<u64>(rest), large);
    std::sort(large.begin(), large.end());
    for (std::size_t i = 0; i < large.size();) {
      std::size_t j = i;
      while (j < large.size() && large[j] == large[i]) ++j;
      f.factors_.push_back({large[i], static_cast<int>(j - i)});
      i = j;
    }
  }
  std::sort(f.factors_.begin(), f.factors_.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return f;
}

int FactoredInt::big_omega() const {
  int total = 0;
  for (const auto& pp : factors_) total += pp.exponent;
  return total;
}

std::vector<std::int64_t> FactoredInt::prime_powers(PowerMode mode) const {
  std::vector<std::int64_t> out;
  for (const auto& [p, a] : factors_) {
    if (mode == PowerMode::Maximal) {
      std::int64_t q = 1;
      for (int j = 0; j < a; ++j) q *= p;
      out.push_back(q);
    } else {
      std::int64_t q = 1;
      for (int j = 0; j < a; ++j) {
        q *= p;
        out.push_back(q);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t FactoredInt::max_prime_power() const {
  std::int64_t best = 1;
  for (const auto& [p, a] : factors_) {
    std::int64_t q = 1;
    for (int j = 0; j < a; ++j) q *= p;
    best = std::max(best, q);
  }
  return best;
}

bool FactoredInt::is_smooth(std::int64_t bound) const {
  if (bound < 2) throw std::domain_error("is_smooth: bound must be >= 2");
  return max_prime_power() <= bound;
}

}  // namespace unitfrac
