#include "fracbs/tridiagonal.hpp"

#include <string>

#include "fracbs/errors.hpp"

namespace fracbs {

Tridiagonal::Tridiagonal(std::size_t m, double l, double d, double u)
    : lower(m > 0 ? m - 1 : 0, l), diag(m, d), upper(m > 0 ? m - 1 : 0, u) {}

std::vector<double> Tridiagonal::apply(std::span<const double> x) const {
  std::vector<double> y(size(), 0.0);
  apply_add(x, 1.0, y);
  return y;
}

void Tridiagonal::apply_add(std::span<const double> x, double scale, std::span<double> y) const {
  const std::size_t m = size();
  if (x.size() != m || y.size() != m) throw ShapeError("Tridiagonal::apply: length mismatch");
  if (m == 0) return;
  for (std::size_t i = 0; i < m; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += lower[i - 1] * x[i - 1];
    if (i + 1 < m) s += upper[i] * x[i + 1];
    y[i] += scale * s;
  }
}

std::vector<double> thomas_solve(const Tridiagonal& M, std::span<const double> rhs) {
  const std::size_t m = M.size();
  if (rhs.size() != m || M.lower.size() + 1 != m || M.upper.size() + 1 != m)
    throw ShapeError("thomas_solve: inconsistent sizes");
  if (m == 0) return {};

  std::vector<double> c(m), y(m);
  double pivot = M.diag[0];
  if (pivot == 0.0) throw SingularMatrixError("thomas_solve: zero pivot at row 0");
  c[0] = m > 1 ? M.upper[0] / pivot : 0.0;
  y[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < m; ++i) {
    pivot = M.diag[i] - M.lower[i - 1] * c[i - 1];
    if (pivot == 0.0)
      throw SingularMatrixError("thomas_solve: zero pivot at row " + std::to_string(i));
    c[i] = i + 1 < m ? M.upper[i] / pivot : 0.0;
    y[i] = (rhs[i] - M.lower[i - 1] * y[i - 1]) / pivot;
  }
  for (std::size_t i = m - 1; i-- > 0;) y[i] -= c[i] * y[i + 1];
  return y;
}

}  // namespace fracbs
