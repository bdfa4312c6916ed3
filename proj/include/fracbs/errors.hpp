#pragma once

#include <stdexcept>
#include <string>

namespace fracbs {

/// Argument outside the mathematical domain of an operation (non-positive
/// price, alpha outside (0,1), zero step count, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Vectors or matrices whose lengths do not agree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mesh too small or inconsistent (n < 3, x_min >= x_max).
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Zero pivot during tridiagonal elimination.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Refinement errors of mixed sign or zero: the grids are outside the
/// asymptotic regime and no order can be read off.
class DegenerateRefinementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracbs
