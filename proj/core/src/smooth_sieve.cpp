#include "unitfrac/smooth_sieve.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

#include "unitfrac/logs.hpp"

namespace unitfrac {

namespace {

// Residual sieve over one segment. Divides every base prime out of each
// position; sink(n) fires for n whose residual reaches 1 without any
// maximal prime power exceeding power_bound (power check skipped when
// power_bound == 0, for plain prime-smoothness counts).
template <typename Sink>
void sieve_segment(std::int64_t seg_lo, std::int64_t seg_hi,
                   const std::vector<std::int64_t>& primes,
                   std::int64_t power_bound, Sink&& sink) {
  const std::size_t m = static_cast<std::size_t>(seg_hi - seg_lo + 1);
  std::vector<std::int64_t> rem(m);
  std::vector<char> bad(m, 0);
  for (std::size_t i = 0; i < m; ++i) rem[i] = seg_lo + static_cast<std::int64_t>(i);
  for (auto p : primes) {
    if (p > seg_hi) break;
    for (std::int64_t v = ((seg_lo + p - 1) / p) * p; v <= seg_hi; v += p) {
      const std::size_t idx = static_cast<std::size_t>(v - seg_lo);
      std::int64_t power = 1;
      while (rem[idx] % p == 0) {
        rem[idx] /= p;
        power *= p;  // bounded by v, no overflow
      }
      if (power_bound != 0 && power > power_bound) bad[idx] = 1;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (!bad[i] && rem[i] == 1) sink(seg_lo + static_cast<std::int64_t>(i));
}

std::int64_t checked_segment_count(std::int64_t lo, std::int64_t hi,
                                   const SieveConfig& config) {
  if (config.segment_size < 1)
    throw std::invalid_argument("sieve segment_size must be positive");
  const std::int64_t span = hi - lo + 1;
  const std::int64_t nseg = (span + config.segment_size - 1) / config.segment_size;
  if (nseg > config.max_segments)
    throw SieveBudgetError("range [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "] needs " + std::to_string(nseg) +
                           " segments, budget is " +
                           std::to_string(config.max_segments));
  return nseg;
}

// Runs fn(segment_index, seg_lo, seg_hi) for every segment. Work is handed
// out by index and each segment writes only its own slot, so results do not
// depend on the thread count.
template <typename Fn>
void for_each_segment(std::int64_t lo, std::int64_t hi, std::int64_t nseg,
                      const SieveConfig& config, Fn&& fn) {
  auto bounds = [&](std::int64_t s) {
    const std::int64_t seg_lo = lo + s * config.segment_size;
    const std::int64_t seg_hi = std::min(hi, seg_lo + config.segment_size - 1);
    return std::pair(seg_lo, seg_hi);
  };
  const int threads = std::max(1, config.threads);
  if (threads == 1 || nseg == 1) {
    for (std::int64_t s = 0; s < nseg; ++s) {
      auto [a, b] = bounds(s);
      fn(s, a, b);
    }
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t s = next.fetch_add(1); s < nseg; s = next.fetch_add(1)) {
      auto [a, b] = bounds(s);
      fn(s, a, b);
    }
  };
  std::vector<std::thread> pool;
  const int n = static_cast<int>(std::min<std::int64_t>(threads, nseg));
  pool.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

IntSet smooth_in_range(const SmoothQuery& query, const SieveConfig& config) {
  if (query.smooth_bound < 2)
    throw std::domain_error("smooth_bound must be >= 2");
  if (query.lo > query.hi)
    throw std::invalid_argument("smooth query range is empty");
  if (query.normality_eps && !(*query.normality_eps >= 0.0))
    throw std::domain_error("normality_eps must be >= 0");
  const std::int64_t lo = std::max<std::int64_t>(2, query.lo);
  const std::int64_t hi = query.hi;
  if (hi < lo) return {};

  const std::int64_t nseg = checked_segment_count(lo, hi, config);
  const auto primes = primes_up_to(std::min(query.smooth_bound, hi));

  std::vector<std::vector<std::int64_t>> found(static_cast<std::size_t>(nseg));
  for_each_segment(lo, hi, nseg, config,
                   [&](std::int64_t s, std::int64_t a, std::int64_t b) {
                     auto& slot = found[static_cast<std::size_t>(s)];
                     sieve_segment(a, b, primes, query.smooth_bound,
                                   [&](std::int64_t n) { slot.push_back(n); });
                   });

  std::vector<FactoredInt> elems;
  for (const auto& slot : found)
    for (auto n : slot) {
      FactoredInt f = FactoredInt::of(n);
      if (query.normality_eps) {
        const double eps = *query.normality_eps;
        const double ll = loglog(static_cast<double>(n));
        if (f.omega() < (1.0 - eps) * ll) continue;
        if (f.big_omega() > (1.0 + eps) * ll) continue;
      }
      elems.push_back(std::move(f));
    }
  return IntSet::of(std::move(elems));
}

std::int64_t count_prime_smooth(std::int64_t x, std::int64_t y,
                                const SieveConfig& config) {
  if (y < 2) throw std::domain_error("smoothness bound must be >= 2");
  if (x < 1) return 0;
  if (x == 1) return 1;

  const std::int64_t nseg = checked_segment_count(2, x, config);
  const auto primes = primes_up_to(std::min(y, x));

  std::vector<std::int64_t> counts(static_cast<std::size_t>(nseg), 0);
  for_each_segment(2, x, nseg, config,
                   [&](std::int64_t s, std::int64_t a, std::int64_t b) {
                     std::int64_t c = 0;
                     sieve_segment(a, b, primes, 0, [&](std::int64_t) { ++c; });
                     counts[static_cast<std::size_t>(s)] = c;
                   });

  std::int64_t total = 1;  // n = 1
  for (auto c : counts) total += c;
  return total;
}

}  // namespace unitfrac
