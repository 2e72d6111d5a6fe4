#include "unitfrac/exp_sum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace unitfrac {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// E(h) over pre-extracted values, with integer h reduced per element.
std::complex<double> product_at(const std::vector<std::int64_t>& values,
                                std::int64_t h) {
  std::complex<double> prod(1.0, 0.0);
  for (auto n : values) {
    const std::int64_t r = ((h % n) + n) % n;
    prod *= 1.0 + std::polar(1.0, kTwoPi * static_cast<double>(r) /
                                      static_cast<double>(n));
  }
  return prod;
}

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

std::complex<double> phase_product(const IntSet& d, double h) {
  std::complex<double> prod(1.0, 0.0);
  for (const auto& e : d.elements()) {
    const double n = static_cast<double>(e.value());
    double arg = h / n;
    arg -= std::floor(arg);  // harmless for non-integer h, exact for integer
    prod *= 1.0 + std::polar(1.0, kTwoPi * arg);
  }
  return prod;
}

double cosine_modulus(const IntSet& d, double h) {
  double prod = std::ldexp(1.0, static_cast<int>(d.size()));
  for (const auto& e : d.elements()) {
    const double n = static_cast<double>(e.value());
    double t = h / (2.0 * n);
    t -= std::floor(t);  // cos(pi h / n) has period 2n in h
    prod *= std::abs(std::cos(kTwoPi * t));
  }
  return prod;
}

ExpSumEvaluation count_by_exponential_sum(const IntSet& d,
                                          std::int64_t period_cap,
                                          int threads) {
  ExpSumEvaluation out;
  if (d.empty()) {
    out.period = 1;
    out.samples.emplace_back(0, std::complex<double>(1.0, 0.0));
    out.total = 0.0;
    out.rounded_count = 0;
    out.rounding_gap = 0.0;
    out.trusted = true;
    return out;
  }
  const BigInt& big_period = d.lcm();
  if (big_period > period_cap)
    throw PeriodBudgetError("set lcm " + big_period.str() +
                            " exceeds sample budget " +
                            std::to_string(period_cap));
  const auto period = static_cast<std::int64_t>(big_period);
  out.period = period;

  const auto values = d.values();
  const double e0 = std::ldexp(1.0, static_cast<int>(values.size()));

  // h in (-period/2, period/2]; conjugate symmetry folds h and -h into
  // 2 Re E(h), leaving h = 0 and, for even periods, the unpaired endpoint.
  const std::int64_t h_max = period / 2;
  const std::int64_t paired_top = (period % 2 == 0) ? h_max - 1 : h_max;

  constexpr std::int64_t kChunk = 4096;
  const std::int64_t nchunks = paired_top <= 0 ? 0 : (paired_top + kChunk - 1) / kChunk;
  std::vector<double> chunk_sums(static_cast<std::size_t>(nchunks), 0.0);
  auto run_chunk = [&](std::int64_t c) {
    const std::int64_t lo = c * kChunk + 1;
    const std::int64_t hi = std::min(paired_top, (c + 1) * kChunk);
    Kahan acc;
    for (std::int64_t h = lo; h <= hi; ++h)
      acc.add(2.0 * product_at(values, h).real());
    chunk_sums[static_cast<std::size_t>(c)] = acc.sum;
  };
  const int nthreads = std::max(1, threads);
  if (nthreads == 1 || nchunks <= 1) {
    for (std::int64_t c = 0; c < nchunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
      for (std::int64_t c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1))
        run_chunk(c);
    };
    std::vector<std::thread> pool;
    const auto n = static_cast<std::size_t>(
        std::min<std::int64_t>(nthreads, nchunks));
    pool.reserve(n);
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Kahan total;
  total.add(e0);
  for (auto s : chunk_sums) total.add(s);
  if (period % 2 == 0) total.add(product_at(values, h_max).real());

  out.total = total.sum / static_cast<double>(period) - 1.0;
  if (std::abs(out.total) >= 9.0e18) {
    out.rounded_count = 0;
    out.rounding_gap = std::numeric_limits<double>::infinity();
    out.trusted = false;
  } else {
    out.rounded_count = std::llround(out.total);
    out.rounding_gap = std::abs(out.total - static_cast<double>(out.rounded_count));
    out.trusted = out.rounding_gap < 0.25;
  }

  const std::int64_t s = std::min<std::int64_t>(64, h_max);
  for (std::int64_t h = -s; h <= s; ++h)
    out.samples.emplace_back(h, product_at(values, h));
  return out;
}

PositivityReport small_h_positivity(const IntSet& d, std::int64_t n_scale) {
  PositivityReport rep;
  if (n_scale < 1) {
    rep.precondition_note = "scale must be >= 1";
    return rep;
  }
  const Rational sum = d.recip_sum();
  const Rational lo = Rational(2) - Rational(3, n_scale);
  if (sum < lo || sum >= 2) {
    rep.precondition_note =
        "reciprocal sum " + to_string(sum) + " outside [2 - 3/" +
        std::to_string(n_scale) + ", 2)";
    return rep;
  }
  rep.precondition_ok = true;

  const auto values = d.values();
  rep.all_positive = true;
  rep.min_real_part = std::numeric_limits<double>::infinity();
  for (std::int64_t h = 1; 6 * h < n_scale; ++h) {
    ++rep.checked;
    const double re2 = 2.0 * product_at(values, h).real();
    rep.min_real_part = std::min(rep.min_real_part, re2);
    if (!(re2 > 0.0)) {
      rep.all_positive = false;
      if (rep.first_violation == 0) rep.first_violation = h;
    }
  }
  if (rep.checked == 0) rep.min_real_part = 0.0;
  return rep;
}

}  // namespace unitfrac
