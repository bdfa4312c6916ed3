#pragma once

// Reference computations for the tests.  None of these call into the
// library; they are slow, simple, and used to derive frozen expected values.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

/// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t m = b.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw std::runtime_error("dense_solve: singular");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(m);
  for (std::size_t i = m; i-- > 0;) {
    long double s = b[i];
    for (std::size_t c = i + 1; c < m; ++c) s -= static_cast<long double>(a[i][c]) * x[c];
    x[i] = static_cast<double>(s / a[i][i]);
  }
  return x;
}

/// ln z for z > 0 by 2 atanh((z-1)/(z+1)) summed in long double.
inline long double log_series(long double z) {
  const long double y = (z - 1) / (z + 1);
  long double term = y, sum = 0;
  for (int k = 0; k < 400; ++k) {
    sum += term / (2 * k + 1);
    term *= y * y;
  }
  return 2 * sum;
}

/// erf by its Maclaurin series in long double; fine for |x| <= 3.
inline long double erf_series(long double x) {
  long double term = x, sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    sum += term / (2 * n + 1);
  }
  return sum * 2 / std::sqrt(3.14159265358979323846264338327950288L);
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// E V^{-alpha} for E exp(-kV) = exp(-k^alpha), from the identity
/// E V^{-s} = (1/Gamma(s)) int_0^inf k^{s-1} E exp(-kV) dk, evaluated with
/// k = w^{1/alpha} and truncated where exp(-w) is negligible.
inline double stable_negative_moment(double alpha) {
  const auto integrand = [alpha](double w) { return std::exp(-w) / alpha; };
  return oracle::simpson(integrand, 0.0, 60.0, 20000) / std::tgamma(alpha);
}

}  // namespace oracle
