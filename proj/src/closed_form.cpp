#include "fracbs/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracbs/errors.hpp"

namespace fracbs {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

BsQuote bs_quote(double Z0, double K, double t, double r, double sigma) {
  if (!(Z0 > 0.0)) throw DomainError("bs_call: Z0 must be positive");
  if (!(K > 0.0)) throw DomainError("bs_call: K must be positive");
  if (!(sigma > 0.0)) throw DomainError("bs_call: sigma must be positive");
  if (!(t >= 0.0)) throw DomainError("bs_call: t must be non-negative");

  const double discounted_strike = K * std::exp(-r * t);
  if (t == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    const double sign = Z0 > K ? 1.0 : (Z0 < K ? -1.0 : 0.0);
    return {std::max(Z0 - K, 0.0), std::max(K - Z0, 0.0), sign * inf, sign * inf};
  }
  const double vol = sigma * std::sqrt(t);
  const double d_plus = (std::log(Z0 / K) + (r + 0.5 * sigma * sigma) * t) / vol;
  const double d_minus = d_plus - vol;
  const double call = Z0 * normal_cdf(d_plus) - discounted_strike * normal_cdf(d_minus);
  return {call, bs_put_via_parity(call, Z0, K, t, r), d_plus, d_minus};
}

double bs_call(double Z0, double K, double t, double r, double sigma) {
  return bs_quote(Z0, K, t, r, sigma).call;
}

double bs_put_via_parity(double call, double Z0, double K, double t, double r) {
  return call - Z0 + K * std::exp(-r * t);
}

}  // namespace fracbs
