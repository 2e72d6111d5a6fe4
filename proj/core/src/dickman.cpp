#include "unitfrac/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace unitfrac {

RhoTable RhoTable::build(double max_u, double tol, double step) {
  if (!(max_u >= 1.0) || !(max_u <= 50.0))
    throw std::domain_error("max_u must lie in [1, 50]");
  if (!(tol >= 1e-12)) throw std::domain_error("tol must be >= 1e-12");
  if (!(step > 0.0) || !(step <= 0.5))
    throw std::domain_error("step must lie in (0, 0.5]");
  const std::int64_t m = std::llround(1.0 / step);
  if (m < 2 || std::abs(m * step - 1.0) > 1e-9)
    throw std::domain_error("step must divide 1 so integers are grid points");
  const auto K = static_cast<std::int64_t>(std::ceil(max_u / step - 1e-9));

  RhoTable t;
  t.max_u_ = static_cast<double>(K) * step;
  t.step_ = step;
  t.tol_ = tol;
  t.values_.assign(static_cast<std::size_t>(K) + 1, 1.0);

  // Trapezoid discretization of u rho(u) = int_{u-1}^u rho:
  //   rho_k (u_k - h/2) = h (rho_{k-m}/2 + sum_{j=k-m+1}^{k-1} rho_j)
  // The h cancels against u_k = k h, leaving rho_k = (rho_{k-m}/2 + W)/(k - 1/2)
  // with W the interior window sum, maintained incrementally.
  auto& rho = t.values_;
  long double window = m - 1;  // sum over j in [2, m], all ones at the start
  for (std::int64_t k = m + 1; k <= K; ++k) {
    rho[static_cast<std::size_t>(k)] =
        static_cast<double>((rho[static_cast<std::size_t>(k - m)] / 2 + window) /
                            (static_cast<long double>(k) - 0.5L));
    window += rho[static_cast<std::size_t>(k)] - rho[static_cast<std::size_t>(k - m + 1)];
  }

  t.prefix_.assign(rho.size(), 0.0);
  long double acc = 0.0;
  for (std::size_t k = 1; k < rho.size(); ++k) {
    acc += static_cast<long double>(step) * (rho[k - 1] + rho[k]) / 2;
    t.prefix_[k] = static_cast<double>(acc);
  }

  // At grid nodes the recurrence satisfies the identity by construction, so
  // verify at cell midpoints, where the residual is the actual interpolation
  // error and shrinks like step^2.
  double worst = 0.0;
  for (std::int64_t k = m; k < K; ++k) {
    const double u_mid = (static_cast<double>(k) + 0.5) * step;
    worst = std::max(worst, t.identity_residual(u_mid));
    if (rho[static_cast<std::size_t>(k + 1)] > rho[static_cast<std::size_t>(k)])
      throw std::runtime_error("rho not nonincreasing; step too coarse");
  }
  t.verified_residual_ = worst;
  if (worst > tol)
    throw std::runtime_error("identity residual " + std::to_string(worst) +
                             " exceeds tolerance " + std::to_string(tol) +
                             " at step " + std::to_string(step));
  return t;
}

double RhoTable::value(double u) const {
  if (!(u >= 0.0)) throw std::domain_error("rho argument must be >= 0");
  if (u <= 1.0) return 1.0;
  if (u > max_u_ + 1e-9) throw std::domain_error("rho argument beyond table");
  const auto k = std::min<std::int64_t>(
      static_cast<std::int64_t>(values_.size()) - 2,
      static_cast<std::int64_t>(u / step_));
  const double frac = u / step_ - static_cast<double>(k);
  const auto i = static_cast<std::size_t>(k);
  return values_[i] * (1.0 - frac) + values_[i + 1] * frac;
}

double RhoTable::cumulative(double x) const {
  const auto last = static_cast<std::int64_t>(values_.size()) - 1;
  const auto k = std::min(last, static_cast<std::int64_t>(x / step_));
  const auto i = static_cast<std::size_t>(k);
  if (k == last) return prefix_[i];
  const double t = x - static_cast<double>(k) * step_;
  const double frac = t / step_;
  const double vx = values_[i] * (1.0 - frac) + values_[i + 1] * frac;
  return prefix_[i] + t * (values_[i] + vx) / 2;
}

double RhoTable::integral(double a, double b) const {
  if (!(a >= 0.0) || !(b >= a)) throw std::domain_error("bad integral bounds");
  if (b > max_u_ + 1e-9) throw std::domain_error("integral bound beyond table");
  return cumulative(b) - cumulative(a);
}

double RhoTable::identity_residual(double u) const {
  if (!(u >= 1.0)) throw std::domain_error("identity needs u >= 1");
  return std::abs(u * value(u) - integral(u - 1.0, u));
}

double smooth_recip_estimate(double log_n, double u, double delta,
                             const RhoTable& table) {
  if (!(log_n > 0.0)) throw std::domain_error("log_n must be positive");
  if (!(u >= 1.0)) throw std::domain_error("u must be >= 1");
  if (!(delta >= 0.0)) throw std::domain_error("delta must be >= 0");
  const double hi = u * (1.0 + delta);
  if (hi > table.max_u() + 1e-9)
    throw std::domain_error("u(1+delta) exceeds table range");
  return log_n / u * table.integral(u, hi);
}

ConstantsReport verify_constants(const ConstantsConfig& config,
                                 const RhoTable* table) {
  ConstantsReport r;
  r.config = config;
  RhoTable local;
  if (table == nullptr) {
    const double need = config.u * (1.0 + config.delta);
    local = RhoTable::build(std::min(50.0, std::ceil(need) + 1.0));
    table = &local;
  }
  r.estimate = smooth_recip_estimate(config.log_n, config.u, config.delta, *table);
  r.margin = (r.estimate - config.target) / config.target;
  r.estimate_exceeds_target = r.estimate > config.target;
  r.rounded_exponent = std::llround(config.log_n * (1.0 + config.delta));
  r.rounded_matches_expected = r.rounded_exponent == config.expected_rounded;
  r.exponent_under_cap = r.rounded_exponent < config.exponent_cap;
  r.all_passed = r.estimate_exceeds_target && r.rounded_matches_expected &&
                 r.exponent_under_cap;
  return r;
}

}  // namespace unitfrac
