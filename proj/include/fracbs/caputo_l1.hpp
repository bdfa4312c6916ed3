#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace fracbs {

/// L1 quadrature of the Caputo derivative on a uniform time mesh.
///
/// With b_j = (j+1)^{1-alpha} - j^{1-alpha} and d = Gamma(2-alpha) dt^alpha,
///
///   D^alpha u(t_{k+1}) ~ (1/d) sum_{j=0}^{k} b_j (u^{k+1-j} - u^{k-j}).
///
/// The weights satisfy 1 = b_0 > b_1 > ... > 0, and the history
/// coefficients (b_j - b_{j+1}) together with b_k sum to one.
struct L1Weights {
  double alpha = 0.5;
  std::vector<double> b;  // b_0 .. b_{N-1}
  double d = 0.0;

  /// b_0 - b_1 = 2 - 2^{1-alpha}; the coefficient of u^k in the history.
  double lead() const { return b.size() > 1 ? b[0] - b[1] : 2.0 - std::pow(2.0, 1.0 - alpha); }
};

double l1_coefficient(double alpha, int j);

/// Throws DomainError for alpha outside (0,1), N < 1 or dt <= 0.
L1Weights build_weights(double alpha, int N, double dt);

/// sum_{j=0}^{k-1} (b_j - b_{j+1}) u^{k-j} + b_k u^0 for k = levels.size() - 1.
///
/// `levels` holds u^0 .. u^k, each of the same length.  Throws ShapeError on a
/// length mismatch and DomainError when k is 0 or not below the number of
/// stored weights.
std::vector<double> history_combination(const L1Weights& weights,
                                        std::span<const std::vector<double>> levels);

/// Same sum with u^j supplied by `level(j)` for j = 0..k, accumulated into
/// `out` (overwritten).  Only the entries [offset, offset + out.size()) of
/// each level are read.
template <class LevelFn>
void accumulate_history(const L1Weights& weights, int k, LevelFn&& level,
                        std::size_t offset, std::span<double> out) {
  const auto& b = weights.b;
  {
    const auto u0 = level(0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = b[k] * u0[offset + i];
  }
  for (int j = 0; j < k; ++j) {
    const double w = b[j] - b[j + 1];
    const auto u = level(k - j);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * u[offset + i];
  }
}

}  // namespace fracbs
