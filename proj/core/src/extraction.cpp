#include "unitfrac/extraction.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "unitfrac/logs.hpp"

namespace unitfrac {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return a > 0 ? (a + b - 1) / b : -(-a / b);
}

std::vector<std::int64_t> divisors_of(std::int64_t m) {
  std::vector<std::int64_t> divs{1};
  if (m >= 2) {
    const auto factored = FactoredInt::of(m);
    for (const auto& pp : factored.factors()) {
      const std::size_t n = divs.size();
      std::int64_t power = 1;
      for (int e = 0; e < pp.exponent; ++e) {
        power *= pp.prime;
        for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * power);
      }
    }
    std::sort(divs.begin(), divs.end());
  }
  return divs;
}

std::string sum_note(const char* label, const Rational& value) {
  return std::string(label) + " " + to_string(value);
}

}  // namespace

double DensityParams::ll() const {
  return loglog_term > 0.0 ? loglog_term : loglog(static_cast<double>(scale));
}

void DensityParams::validate() const {
  if (scale < 2) throw std::domain_error("scale must be >= 2");
  if (loglog_term < 0.0) throw std::domain_error("loglog_term must be >= 0");
  if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
  if (delta < 0.0) throw std::domain_error("delta must be >= 0");
  if (strict && !(theta + delta < 0.25))
    throw std::domain_error("strict mode needs theta + delta < 1/4");
}

PruneResult prune_sparse_prime_powers(const IntSet& s, const Rational& rho,
                                      const Rational& mu,
                                      const DensityParams& params) {
  params.validate();
  if (!(rho > mu)) throw std::invalid_argument("pruning needs rho > mu");
  if (s.recip_sum() < rho)
    throw std::invalid_argument("reciprocal sum " + to_string(s.recip_sum()) +
                                " below rho " + to_string(rho));
  if (!s.empty())
    for (auto q : s.prime_powers(PowerMode::All))
      if (q >= params.scale)
        throw std::invalid_argument("prime power " + std::to_string(q) +
                                    " not below scale " +
                                    std::to_string(params.scale));

  const Rational llr = rational_from_double(params.ll());
  const Rational gap = rho - mu;
  PruneResult out;
  IntSet cur = s;
  // Always rescan from the smallest prime power after a removal; the
  // removal order is part of the contract.
  for (bool removed = true; removed;) {
    removed = false;
    for (auto q : cur.prime_powers(PowerMode::All)) {
      const Rational msum = cur.recip_sum_of_multiples(q);
      if (msum * (2 * q) * llr <= gap) {  // msum <= gap / (2 q loglog)
        out.steps.push_back({q, cur.multiples_of(q)});
        cur = cur.without_multiples_of(q);
        removed = true;
        break;
      }
    }
  }
  out.ok = cur.recip_sum() > mu;
  out.status = out.ok ? "ok"
                      : sum_note("kept sum", cur.recip_sum()) + " not above " +
                            to_string(mu);
  out.kept = std::move(cur);
  return out;
}

WindowResult extract_window_subset(const IntSet& j, const DensityParams& params) {
  params.validate();
  if (!(params.nu > 0) || !(params.alpha > params.nu))
    throw std::invalid_argument("window extraction needs alpha > nu > 0");
  if (j.recip_sum() < params.alpha)
    throw std::invalid_argument("reciprocal sum " + to_string(j.recip_sum()) +
                                " below alpha " + to_string(params.alpha));

  const Rational& nu = params.nu;
  const Rational window_lo = nu - unit_fraction(params.scale);

  WindowResult out;
  auto initial = prune_sparse_prime_powers(j, params.alpha, nu, params);
  out.initial_prune = std::move(initial.steps);
  IntSet cur = std::move(initial.kept);

  for (;;) {
    const Rational sum = cur.recip_sum();
    if (sum >= window_lo && sum < nu) break;
    if (sum < window_lo) {
      out.status = sum_note("window overshoot: sum", sum) + " fell below " +
                   to_string(window_lo);
      out.kept = std::move(cur);
      return out;
    }
    auto pruned = prune_sparse_prime_powers(cur, nu, nu / 2, params);
    WindowStep step;
    step.prune_steps = std::move(pruned.steps);
    cur = std::move(pruned.kept);
    if (cur.empty()) {
      out.steps.push_back(std::move(step));
      out.status = "pruned to the empty set before reaching the window";
      out.kept = std::move(cur);
      return out;
    }
    step.removed = cur.min_value();
    cur = cur.without_value(step.removed);
    out.steps.push_back(std::move(step));
  }

  // Re-scan both conclusions instead of trusting the construction.
  const Rational spare = params.alpha - nu;
  const Rational bound_num = std::min(nu, spare);
  const Rational llr = rational_from_double(params.ll());
  for (auto q : cur.prime_powers(PowerMode::All)) {
    const Rational msum = cur.recip_sum_of_multiples(q);
    if (!(msum * (5 * q) * llr > bound_num)) {
      out.status = "density verification failed at prime power " +
                   std::to_string(q) + ": " + sum_note("multiples sum", msum);
      out.kept = std::move(cur);
      return out;
    }
  }
  out.ok = true;
  out.status = "ok";
  out.kept = std::move(cur);
  return out;
}

std::int64_t count_non_divisors(const IntSet& e, const Interval& i) {
  if (i.hi < i.lo) throw std::invalid_argument("interval is empty");
  std::int64_t count = 0;
  for (const auto& el : e.elements())
    if (floor_div(i.hi, el.value()) < ceil_div(i.lo, el.value())) ++count;
  return count;
}

IntervalOutcome classify_interval(const IntSet& e, const Interval& i,
                                  const DensityParams& params,
                                  std::int64_t pair_search_limit) {
  params.validate();
  if (e.empty()) throw std::invalid_argument("cannot classify an empty set");
  if (i.hi < i.lo) throw std::invalid_argument("interval is empty");

  IntervalOutcome out;
  out.non_divisor_count = count_non_divisors(e, i);
  const double ll = params.ll();
  const double hypothesis_cap =
      std::pow(static_cast<double>(params.scale), 1.0 - params.theta) / (ll * ll);
  out.hypothesis_ok = static_cast<double>(out.non_divisor_count) <= hypothesis_cap;
  if (!out.hypothesis_ok) {
    out.note = "divisor hypothesis failed: " +
               std::to_string(out.non_divisor_count) + " non-divisors vs cap " +
               std::to_string(hypothesis_cap);
    return out;
  }

  const BigInt& big_l = e.lcm();
  BigInt multiple = (BigInt(i.lo) / big_l) * big_l;
  while (multiple < i.lo) multiple += big_l;
  while (multiple - big_l >= i.lo) multiple -= big_l;
  if (multiple <= i.hi) {
    out.kind = IntervalCase::Single;
    out.w = static_cast<std::int64_t>(multiple);
    return out;
  }

  if (i.length() > pair_search_limit) {
    out.note = "pair search skipped: interval length " +
               std::to_string(i.length()) + " over limit " +
               std::to_string(pair_search_limit);
    return out;
  }

  // Pair search: per-x bitmask of which elements divide x, candidates
  // ordered by coverage (then by x) so the scan is deterministic.
  const auto vals = e.values();
  const std::size_t k = vals.size();
  const std::size_t blocks = (k + 63) / 64;
  struct Candidate {
    std::int64_t x = 0;
    int covered = 0;
    std::vector<std::uint64_t> mask;
  };
  std::vector<Candidate> cands;
  cands.reserve(static_cast<std::size_t>(i.length()));
  for (std::int64_t x = i.lo; x <= i.hi; ++x) {
    Candidate c;
    c.x = x;
    c.mask.assign(blocks, 0);
    for (std::size_t idx = 0; idx < k; ++idx)
      if (x % vals[idx] == 0) {
        c.mask[idx / 64] |= std::uint64_t(1) << (idx % 64);
        ++c.covered;
      }
    cands.push_back(std::move(c));
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.covered != b.covered ? a.covered > b.covered : a.x < b.x;
  });

  const double pair_cap = 2.0 * hypothesis_cap;
  for (std::size_t a = 0; a < cands.size(); ++a)
    for (std::size_t b = a + 1; b < cands.size(); ++b) {
      std::size_t joint = 0;
      for (std::size_t t = 0; t < blocks; ++t)
        joint += static_cast<std::size_t>(
            std::popcount(cands[a].mask[t] | cands[b].mask[t]));
      if (static_cast<double>(k - joint) >= pair_cap) continue;
      const BigInt prod = BigInt(cands[a].x) * cands[b].x;
      if (prod % big_l != 0) continue;
      out.kind = IntervalCase::Pair;
      out.w1 = std::min(cands[a].x, cands[b].x);
      out.w2 = std::max(cands[a].x, cands[b].x);
      return out;
    }
  out.note = "no qualifying pair";
  return out;
}

std::optional<std::int64_t> find_dense_divisor(const IntSet& e, std::int64_t q,
                                               const DensityParams& params,
                                               double threshold_constant) {
  params.validate();
  if (q < 2) throw std::invalid_argument("prime power must be >= 2");
  const auto mult = e.multiples_of(q);
  if (mult.empty()) return std::nullopt;

  const double n = static_cast<double>(params.scale);
  const double range_lo = std::pow(n, 0.75);
  const double range_hi = std::pow(n, 0.75 + params.theta);
  const double ll = params.ll();
  const double min_prime = std::exp((0.125 - params.theta / 2.0) * std::log(n) / ll);
  const double max_omega = ll / loglogloglog(n);

  std::set<std::int64_t> candidates;
  for (auto m : mult)
    for (auto d : divisors_of(m / q)) candidates.insert(d);

  for (auto d : candidates) {
    const double qd = static_cast<double>(q) * static_cast<double>(d);
    if (qd < range_lo || qd > range_hi) continue;
    if (d > 1) {
      const auto f = FactoredInt::of(d);
      if (static_cast<double>(f.factors().front().prime) <= min_prime) continue;
      if (static_cast<double>(f.omega()) > max_omega) continue;
    }
    const double threshold = threshold_constant / (qd * ll * ll);
    if (!std::isfinite(threshold)) continue;
    if (e.recip_sum_of_multiples(q * d) > rational_from_double(threshold))
      return d;
  }
  return std::nullopt;
}

namespace {

std::vector<Interval> make_intervals(const IntSet& e, const DensityParams& params,
                                     const PipelineConfig& config) {
  const auto width = std::max<std::int64_t>(
      1, std::llround(std::pow(static_cast<double>(params.scale), 0.75)));
  const std::int64_t half = width / 2;
  auto around = [&](std::int64_t center) {
    return Interval{center - half, center - half + width - 1};
  };

  std::vector<Interval> out;
  std::set<std::int64_t> seen;
  auto push = [&](std::int64_t center) {
    if (static_cast<std::int64_t>(out.size()) >= config.interval_budget) return;
    if (!seen.insert(center).second) return;
    out.push_back(around(center));
  };

  for (auto h : config.user_h) push(h);

  const std::int64_t budget_left =
      config.interval_budget - static_cast<std::int64_t>(out.size());
  if (budget_left <= 0) return out;

  // A sweep across the plausible range, then intervals placed to just miss
  // a multiple of each large element.
  const std::int64_t sweep_count = std::max<std::int64_t>(1, budget_left / 2);
  const std::int64_t start = std::max<std::int64_t>(1, params.scale / 6);
  const std::int64_t end = std::max(start + 1, 3 * e.max_value());
  const std::int64_t stride = std::max<std::int64_t>(1, (end - start) / sweep_count);
  for (std::int64_t t = 0; t < sweep_count; ++t) push(start + t * stride);

  const auto& elems = e.elements();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
    if (static_cast<std::int64_t>(out.size()) >= config.interval_budget) break;
    const std::int64_t v = it->value();
    const std::int64_t multiple = ceil_div(params.scale, v) * v;
    push(multiple + half + 1);
  }
  return out;
}

nlohmann::json prune_steps_json(const std::vector<PruneStep>& steps) {
  auto arr = nlohmann::json::array();
  for (const auto& s : steps)
    arr.push_back({{"q", s.q}, {"removed", s.removed}});
  return arr;
}

}  // namespace

PipelineResult run_extraction_pipeline(const IntSet& c,
                                       const DensityParams& params,
                                       const PipelineConfig& config) {
  params.validate();
  if (!(c.recip_sum() > config.entry_threshold))
    throw std::invalid_argument("entry reciprocal sum " +
                                to_string(c.recip_sum()) + " must exceed " +
                                to_string(config.entry_threshold));

  PipelineResult out;
  IntSet cur = c;
  std::string loop_note;

  for (std::int64_t round = 0; round < config.max_rounds; ++round) {
    const Rational remaining = cur.recip_sum();
    if (!(remaining > config.first_window)) {
      loop_note = sum_note("remaining sum", remaining) +
                  " no longer exceeds the extraction window";
      break;
    }

    DensityParams window_params = params;
    window_params.alpha = remaining;
    window_params.nu = config.first_window;
    auto extracted = extract_window_subset(cur, window_params);
    out.trace.push_back({{"round", round},
                         {"step", "window-extract"},
                         {"nu", to_string(window_params.nu)},
                         {"ok", extracted.ok},
                         {"status", extracted.status},
                         {"kept_size", extracted.kept.size()},
                         {"kept_sum", to_string(extracted.kept.recip_sum())},
                         {"initial_prune", prune_steps_json(extracted.initial_prune)}});
    if (!extracted.ok) {
      loop_note = "window extraction failed: " + extracted.status;
      break;
    }
    const IntSet& e = extracted.kept;

    const auto intervals = make_intervals(e, params, config);
    std::optional<IntervalOutcome> pair;
    for (const auto& iv : intervals) {
      auto outcome = classify_interval(e, iv, params, config.pair_search_limit);
      ++out.intervals_tested;
      if (outcome.hypothesis_ok) ++out.intervals_hypothesis_ok;
      out.trace.push_back(
          {{"round", round},
           {"step", "classify"},
           {"lo", iv.lo},
           {"hi", iv.hi},
           {"kind", outcome.kind == IntervalCase::Single   ? "single"
                    : outcome.kind == IntervalCase::Pair ? "pair"
                                                         : "neither"},
           {"hypothesis_ok", outcome.hypothesis_ok},
           {"non_divisors", outcome.non_divisor_count},
           {"note", outcome.note}});
      if (outcome.kind == IntervalCase::Pair) {
        pair = outcome;
        break;
      }
    }

    if (!pair) {
      out.d = e;
      out.ok = true;
      out.status = out.intervals_hypothesis_ok > 0
                       ? "single case held on every tested interval"
                       : "no tested interval met the divisor hypothesis; "
                         "single case vacuous over the tested set";
      out.trace.push_back({{"round", round},
                           {"step", "conclude"},
                           {"status", out.status},
                           {"d_sum", to_string(e.recip_sum())}});
      return out;
    }

    // Keep whichever pair witness captures the larger reciprocal mass.
    Rational s1(0), s2(0);
    for (const auto& el : e.elements()) {
      if (pair->w1 % el.value() == 0) s1 += unit_fraction(el.value());
      if (pair->w2 % el.value() == 0) s2 += unit_fraction(el.value());
    }
    const std::int64_t chosen = s1 >= s2 ? pair->w1 : pair->w2;
    IntSet restricted =
        e.filter([&](const FactoredInt& el) { return chosen % el.value() == 0; });
    out.trace.push_back({{"round", round},
                         {"step", "restrict"},
                         {"w1", pair->w1},
                         {"w2", pair->w2},
                         {"chosen", chosen},
                         {"restricted_size", restricted.size()},
                         {"restricted_sum", to_string(restricted.recip_sum())}});

    DensityParams second_params = params;
    second_params.alpha = restricted.recip_sum();
    second_params.nu = config.second_window;
    if (!(second_params.alpha > second_params.nu)) {
      loop_note = sum_note("restricted sum", second_params.alpha) +
                  " does not exceed the second window";
      break;
    }
    auto piece = extract_window_subset(restricted, second_params);
    out.trace.push_back({{"round", round},
                         {"step", "window-extract"},
                         {"nu", to_string(second_params.nu)},
                         {"ok", piece.ok},
                         {"status", piece.status},
                         {"kept_size", piece.kept.size()},
                         {"kept_sum", to_string(piece.kept.recip_sum())}});
    if (!piece.ok) {
      loop_note = "second window extraction failed: " + piece.status;
      break;
    }

    out.removed_sets.push_back(piece.kept);
    cur = cur.set_minus(piece.kept);
    out.trace.push_back({{"round", round},
                         {"step", "peel"},
                         {"piece_size", piece.kept.size()},
                         {"remaining_sum", to_string(cur.recip_sum())}});
    if (cur.recip_sum() <= config.stop_threshold) break;
  }

  if (out.removed_sets.size() < 3) {
    out.status = loop_note.empty()
                     ? "stopped with " + std::to_string(out.removed_sets.size()) +
                           " removed pieces; merging needs three"
                     : loop_note;
    out.trace.push_back({{"step", "halt"}, {"status", out.status}});
    return out;
  }

  // Merge: the triple of removed pieces sharing the largest prime-power
  // reciprocal mass must clear the configured fraction of loglog.
  const auto& pieces = out.removed_sets;
  Rational best_sigma(-1);
  std::array<std::size_t, 3> best{0, 0, 0};
  for (std::size_t a = 0; a < pieces.size(); ++a)
    for (std::size_t b = a + 1; b < pieces.size(); ++b)
      for (std::size_t cc = b + 1; cc < pieces.size(); ++cc) {
        std::vector<std::int64_t> ab, abc;
        const auto& qa = pieces[a].prime_powers(PowerMode::All);
        const auto& qb = pieces[b].prime_powers(PowerMode::All);
        const auto& qc = pieces[cc].prime_powers(PowerMode::All);
        std::set_intersection(qa.begin(), qa.end(), qb.begin(), qb.end(),
                              std::back_inserter(ab));
        std::set_intersection(ab.begin(), ab.end(), qc.begin(), qc.end(),
                              std::back_inserter(abc));
        const Rational sigma = sum_unit_fractions(abc);
        if (sigma > best_sigma) {
          best_sigma = sigma;
          best = {a, b, cc};
        }
      }

  const Rational merge_floor =
      rational_from_double(config.merge_sigma_constant * params.ll());
  const bool merged = best_sigma > merge_floor;
  out.trace.push_back({{"step", "merge"},
                       {"pieces", pieces.size()},
                       {"best_triple", {best[0], best[1], best[2]}},
                       {"shared_sigma", to_string(best_sigma)},
                       {"floor", to_string(merge_floor)},
                       {"ok", merged}});
  if (!merged) {
    out.status = "merge threshold unmet: best shared prime-power sum " +
                 to_string(best_sigma) + " vs floor " + to_string(merge_floor);
    if (!loop_note.empty()) out.status += " (" + loop_note + ")";
    return out;
  }
  out.d = pieces[best[0]].set_union(pieces[best[1]]).set_union(pieces[best[2]]);
  out.ok = true;
  out.status = "merged three removed pieces";
  if (!loop_note.empty()) out.status += " (" + loop_note + ")";
  return out;
}

}  // namespace unitfrac
