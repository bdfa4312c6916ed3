#pragma once

#include <span>
#include <vector>

namespace fracbs {

/// Banded m x m matrix; lower[i] sits at (i+1, i), upper[i] at (i, i+1).
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  Tridiagonal() = default;
  explicit Tridiagonal(std::size_t m, double l = 0.0, double d = 0.0, double u = 0.0);

  std::size_t size() const { return diag.size(); }

  static Tridiagonal identity(std::size_t m) { return Tridiagonal(m, 0.0, 1.0, 0.0); }

  /// y = M x.  Throws ShapeError on a length mismatch.
  std::vector<double> apply(std::span<const double> x) const;
  void apply_add(std::span<const double> x, double scale, std::span<double> y) const;
};

/// Thomas elimination.  Throws SingularMatrixError on a zero pivot and
/// ShapeError when rhs does not match the matrix.
std::vector<double> thomas_solve(const Tridiagonal& M, std::span<const double> rhs);

}  // namespace fracbs
