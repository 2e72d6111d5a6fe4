#pragma once

#include <cstdint>
#include <vector>

namespace unitfrac {

/// Dickman rho on a uniform grid, solved through the Volterra form
///   u * rho(u) = integral of rho over [u-1, u]
/// which is stable where naive steppers for u rho'(u) = -rho(u-1) are not.
/// Evaluation interpolates linearly; integrals are exact for the
/// interpolant. Immutable after build, safe to share across threads.
class RhoTable {
 public:
  /// Marches the table to max_u and verifies the integral identity at every
  /// cell midpoint past u = 1 (grid nodes satisfy it by construction, so the
  /// midpoint residual is the honest discretization error). Throws
  /// std::runtime_error if the requested tolerance is unreachable at this
  /// step, std::domain_error on bad arguments (max_u outside [1, 50], tol
  /// below 1e-12, step not a divisor of 1).
  static RhoTable build(double max_u = 50.0, double tol = 1e-8,
                        double step = 1e-4);

  /// Interpolated rho(u); exactly 1 for u <= 1. Throws std::domain_error
  /// outside [0, max_u].
  double value(double u) const;

  /// Exact integral of the interpolant over [a, b] in [0, max_u], a <= b.
  double integral(double a, double b) const;

  /// |u * value(u) - integral(u-1, u)| for u in [1, max_u].
  double identity_residual(double u) const;

  double max_u() const { return max_u_; }
  double step() const { return step_; }
  double tol() const { return tol_; }
  int interpolation_order() const { return 1; }
  /// Grid samples rho(k * step), k = 0 .. size-1.
  const std::vector<double>& grid_values() const { return values_; }
  /// Largest identity residual seen during build verification.
  double verified_residual() const { return verified_residual_; }

 private:
  double cumulative(double x) const;

  double max_u_ = 0;
  double step_ = 0;
  double tol_ = 0;
  double verified_residual_ = 0;
  std::vector<double> values_;   // rho at k * step
  std::vector<double> prefix_;   // integral of interpolant over [0, k * step]
};

/// (log_n / u) * integral of rho over [u, u(1+delta)]: the expected
/// reciprocal sum per unit of log over a smooth range one delta-band wide.
/// Requires u >= 1, delta >= 0, u(1+delta) <= table.max_u().
double smooth_recip_estimate(double log_n, double u, double delta,
                             const RhoTable& table);

/// The constant check feeding the main construction: with the default
/// parameters the reciprocal-sum estimate should clear the target, and the
/// widened exponent (1+delta) * log_n should round to the expected value
/// under the cap.
struct ConstantsConfig {
  double log_n = 163550.0;
  double u = 4.32;
  double delta = 0.25 - 1.0 / 4.32 - 0.0001;
  double target = 6.0001;
  std::int64_t expected_rounded = 166562;
  std::int64_t exponent_cap = 167000;
};

struct ConstantsReport {
  ConstantsConfig config;
  double estimate = 0.0;
  /// (estimate - target) / target, reported pass or fail.
  double margin = 0.0;
  bool estimate_exceeds_target = false;
  std::int64_t rounded_exponent = 0;
  bool rounded_matches_expected = false;
  bool exponent_under_cap = false;
  bool all_passed = false;
};

/// Failures are recorded in the report, never thrown. Builds a table
/// covering u(1+delta) when none is supplied.
ConstantsReport verify_constants(const ConstantsConfig& config = {},
                                 const RhoTable* table = nullptr);

}  // namespace unitfrac
