#pragma once

// Market parameters, mesh description and the data of the log-price
// problem
//
//   D_t^alpha u = a u_xx + b u_x - c u,   u(x, 0) = payoff(x),
//   u(x_min, t) = p(t),                   u(x_max, t) = q(t),
//
// where t runs backwards from maturity (u(x, t) = v(e^x, T - t)).

#include <functional>

namespace fracbs {

struct MarketParams {
  double sigma = 1.0;
  double r = 0.04;
  double K = 2.0;
  double T = 4.0;
  double Z0 = 1.0;
  double alpha = 0.999;

  /// Throws DomainError unless sigma, K, T, Z0 > 0, r >= 0 and
  /// 0 < alpha <= 1.  With `for_pde` alpha must also be < 1.
  void validate(bool for_pde = false) const;

  bool operator==(const MarketParams&) const = default;
};

struct PdeCoefficients {
  double a;  // diffusion, sigma^2 / 2
  double b;  // drift, r - sigma^2 / 2
  double c;  // reaction, r
};

struct GridSpec {
  double x_min = -20.0;
  double x_max = 10.0;
  int n = 500;  // space intervals
  int N = 50;   // time steps

  double dx() const { return (x_max - x_min) / n; }
  double dt(double T) const { return T / N; }
  double x(int i) const { return x_min + i * dx(); }

  /// Throws GridError if x_min >= x_max, n < 3 or N < 1.
  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

double to_log_coords(double z);

double payoff(double x, double K);
double put_payoff(double x, double K);

double boundary_lower(double t);

/// How the far-field value q(t) at x_max is computed.
enum class UpperBoundary {
  /// e^{x_max} - K e^{-r t}; matches the payoff at t = 0.
  kConsistent,
  /// e^{x_max} - K e^{-r (T - t)}, the forward-time formula.
  kForwardTime,
};

double boundary_upper(double t, const MarketParams& params, double x_max,
                      UpperBoundary mode = UpperBoundary::kConsistent);

PdeCoefficients coefficients(const MarketParams& params);

enum class OptionKind { kCall, kPut };

/// Initial and Dirichlet data for one solve.  `initial` is evaluated on
/// every node at t = 0; `lower`/`upper` on the boundary nodes for t > 0.
struct BoundaryData {
  std::function<double(double)> initial;
  std::function<double(double)> lower;
  std::function<double(double)> upper;
};

/// Call: payoff max(e^x - K, 0), p = 0, q = boundary_upper.
/// Put:  payoff max(K - e^x, 0), p(t) = K e^{-rt} - e^{x_min}, q = 0.
BoundaryData make_boundary_data(OptionKind kind, const MarketParams& params,
                                const GridSpec& grid,
                                UpperBoundary mode = UpperBoundary::kConsistent);

}  // namespace fracbs
