#include "fracbs/caputo_l1.hpp"

#include <cmath>

#include "fracbs/errors.hpp"

namespace fracbs {

double l1_coefficient(double alpha, int j) {
  const double e = 1.0 - alpha;
  if (j == 0) return 1.0;
  // (j+1)^e - j^e = j^e * expm1(e * log1p(1/j)); avoids cancellation for large j.
  const double jd = static_cast<double>(j);
  return std::pow(jd, e) * std::expm1(e * std::log1p(1.0 / jd));
}

L1Weights build_weights(double alpha, int N, double dt) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("build_weights: alpha must lie in (0, 1)");
  if (N < 1) throw DomainError("build_weights: N must be at least 1");
  if (!(dt > 0.0)) throw DomainError("build_weights: dt must be positive");

  L1Weights w;
  w.alpha = alpha;
  w.b.resize(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) w.b[j] = l1_coefficient(alpha, j);
  w.d = std::tgamma(2.0 - alpha) * std::pow(dt, alpha);
  return w;
}

std::vector<double> history_combination(const L1Weights& weights,
                                        std::span<const std::vector<double>> levels) {
  if (levels.size() < 2) throw DomainError("history_combination: need levels u^0..u^k with k >= 1");
  const int k = static_cast<int>(levels.size()) - 1;
  if (k >= static_cast<int>(weights.b.size()))
    throw DomainError("history_combination: k must be below the number of weights");
  const std::size_t m = levels[0].size();
  for (const auto& v : levels)
    if (v.size() != m) throw ShapeError("history_combination: level lengths differ");

  std::vector<double> out(m);
  accumulate_history(
      weights, k, [&](int j) { return std::span<const double>(levels[j]); }, 0, out);
  return out;
}

}  // namespace fracbs
