#include "fracbs/stability.hpp"

#include <cmath>

#include "fracbs/errors.hpp"

namespace fracbs {

namespace {

// b_0 - b_1 of the L1 weights.
double lead_weight(double alpha) { return 2.0 - std::exp2(1.0 - alpha); }

// Slack for the boundary case theta = optimal_theta(alpha), where both sides
// agree up to rounding.
constexpr double kBoundarySlack = 1e-12;

}  // namespace

bool unconditional_predicate(double theta, double alpha) {
  if (!(theta >= 0.0 && theta < 1.0)) return false;
  const double arg = 2.0 - theta / (1.0 - theta);
  if (!(arg > 0.0)) return false;
  return 1.0 - std::log2(arg) <= alpha + kBoundarySlack;
}

bool conditional_predicate(double theta, double alpha, const PdeCoefficients& coeffs, double dt,
                           double dx) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("conditional_predicate: alpha must lie in (0, 1)");
  if (!(dt > 0.0 && dx > 0.0)) throw DomainError("conditional_predicate: steps must be positive");
  const double lead = lead_weight(alpha);
  const double d = std::tgamma(2.0 - alpha) * std::pow(dt, alpha);
  const double excess = theta - (1.0 - theta) * lead;
  const double spectral = 4.0 * coeffs.a / (dx * dx) + coeffs.c;
  const double drift = coeffs.b / dx;
  return d * excess * (spectral * spectral + drift * drift) <= 2.0 * coeffs.c * lead;
}

StabilityVerdict stability_verdict(double theta, double alpha, const PdeCoefficients& coeffs,
                                   double dt, double dx) {
  StabilityVerdict v;
  v.unconditional = unconditional_predicate(theta, alpha);
  v.conditional = conditional_predicate(theta, alpha, coeffs, dt, dx);
  v.stable = v.unconditional || v.conditional;
  return v;
}

double optimal_theta(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("optimal_theta: alpha must lie in (0, 1]");
  const double p = std::exp2(1.0 - alpha);
  return (2.0 - p) / (3.0 - p);
}

}  // namespace fracbs
