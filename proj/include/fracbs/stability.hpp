#pragma once

#include "fracbs/model.hpp"

namespace fracbs {

struct StabilityVerdict {
  bool unconditional = false;
  bool conditional = false;
  bool stable = false;
};

/// Condition 1 - log2(2 - theta/(1-theta)) <= alpha.  False for theta >= 2/3,
/// where the logarithm's argument is not positive, and for theta = 1.
bool unconditional_predicate(double theta, double alpha);

/// d (theta - (1-theta)(b0-b1)) ((4a/dx^2 + c)^2 + (b/dx)^2) <= 2 c (b0-b1)
/// with d = Gamma(2-alpha) dt^alpha and b0 - b1 = 2 - 2^{1-alpha}.
bool conditional_predicate(double theta, double alpha, const PdeCoefficients& coeffs,
                           double dt, double dx);

StabilityVerdict stability_verdict(double theta, double alpha, const PdeCoefficients& coeffs,
                                   double dt, double dx);

/// (2 - 2^{1-alpha}) / (3 - 2^{1-alpha}): the largest theta that keeps the
/// scheme unconditionally stable.
double optimal_theta(double alpha);

}  // namespace fracbs
