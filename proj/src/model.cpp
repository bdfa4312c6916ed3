#include "fracbs/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracbs/errors.hpp"

namespace fracbs {

void MarketParams::validate(bool for_pde) const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("invalid market parameter: ") + what);
  };
  require(sigma > 0.0 && std::isfinite(sigma), "sigma must be > 0");
  require(r >= 0.0 && std::isfinite(r), "r must be >= 0");
  require(K > 0.0 && std::isfinite(K), "K must be > 0");
  require(T > 0.0 && std::isfinite(T), "T must be > 0");
  require(Z0 > 0.0 && std::isfinite(Z0), "Z0 must be > 0");
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
  if (for_pde) require(alpha < 1.0, "the fractional solver needs alpha < 1");
}

void GridSpec::validate() const {
  if (!(x_min < x_max)) throw GridError("grid: x_min must be below x_max");
  if (n < 3) throw GridError("grid: n must be at least 3");
  if (N < 1) throw GridError("grid: N must be at least 1");
}

double to_log_coords(double z) {
  if (!(z > 0.0)) throw DomainError("to_log_coords: price must be positive");
  return std::log(z);
}

double payoff(double x, double K) { return std::max(std::exp(x) - K, 0.0); }

double put_payoff(double x, double K) { return std::max(K - std::exp(x), 0.0); }

double boundary_lower(double /*t*/) { return 0.0; }

double boundary_upper(double t, const MarketParams& params, double x_max, UpperBoundary mode) {
  const double tau = mode == UpperBoundary::kConsistent ? t : params.T - t;
  return std::exp(x_max) - params.K * std::exp(-params.r * tau);
}

PdeCoefficients coefficients(const MarketParams& params) {
  const double half_var = 0.5 * params.sigma * params.sigma;
  return {half_var, params.r - half_var, params.r};
}

BoundaryData make_boundary_data(OptionKind kind, const MarketParams& params,
                                const GridSpec& grid, UpperBoundary mode) {
  const double K = params.K;
  const double r = params.r;
  if (kind == OptionKind::kCall) {
    return {
        [K](double x) { return payoff(x, K); },
        [](double t) { return boundary_lower(t); },
        [params, x_max = grid.x_max, mode](double t) {
          return boundary_upper(t, params, x_max, mode);
        },
    };
  }
  // Put: deep in the money at x_min, worthless at x_max.
  return {
      [K](double x) { return put_payoff(x, K); },
      [K, r, x_min = grid.x_min](double t) { return K * std::exp(-r * t) - std::exp(x_min); },
      [](double) { return 0.0; },
  };
}

}  // namespace fracbs
