#pragma once

namespace fracbs {

struct BsQuote {
  double call;
  double put;
  double d_plus;
  double d_minus;
};

/// Standard normal CDF via erfc, accurate in both tails.
double normal_cdf(double x);

/// Classical Black-Scholes call with time to maturity t.  t = 0 gives the
/// payoff.  Throws DomainError for non-positive Z0, K or sigma, or t < 0.
double bs_call(double Z0, double K, double t, double r, double sigma);

/// P = C - Z0 + K e^{-rt}.
double bs_put_via_parity(double call, double Z0, double K, double t, double r);

BsQuote bs_quote(double Z0, double K, double t, double r, double sigma);

}  // namespace fracbs
