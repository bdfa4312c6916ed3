#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "fracbs/caputo_l1.hpp"
#include "fracbs/model.hpp"
#include "fracbs/stability.hpp"
#include "fracbs/tridiagonal.hpp"

namespace fracbs {

/// Weighted scheme
///
///   C u^{k+1} = H^k + (1-theta) G^{k+1} + theta G^k + theta B u^k,
///   C = theta I + (1-theta) A,   A + B = I,
///
/// on the interior nodes 1..n-1, where H^k is the L1 history combination.
/// theta = 0 is fully implicit, theta = 1 fully explicit and theta = 1/2 the
/// Crank-Nicolson analogue.
struct SchemeConfig {
  double theta = 0.5;
  GridSpec grid;
  MarketParams params;
  OptionKind kind = OptionKind::kCall;
  UpperBoundary upper_mode = UpperBoundary::kConsistent;
  /// Replaces the built-in payoff/boundaries when set.
  std::function<BoundaryData(const MarketParams&, const GridSpec&)> custom_data;

  void validate() const;
  BoundaryData boundary_data() const;
};

/// u(x_i, t_k) for i = 0..n, k = 0..N, stored level by level.
class SolutionSurface {
 public:
  SolutionSurface(GridSpec grid, double T);

  const GridSpec& grid() const { return grid_; }
  double T() const { return T_; }

  std::span<double> level(int k) { return {values_.data() + idx(0, k), stride()}; }
  std::span<const double> level(int k) const {
    return {values_.data() + idx(0, k), stride()};
  }
  double operator()(int i, int k) const { return values_[idx(i, k)]; }
  double& operator()(int i, int k) { return values_[idx(i, k)]; }

  /// Linear interpolation in x at level k.  Throws DomainError outside
  /// [x_min, x_max].
  double value_at(double x, int k) const;
  double value_at_maturity(double x) const { return value_at(x, grid_.N); }

  StabilityVerdict verdict;

 private:
  std::size_t stride() const { return static_cast<std::size_t>(grid_.n) + 1; }
  std::size_t idx(int i, int k) const { return static_cast<std::size_t>(k) * stride() + i; }

  GridSpec grid_;
  double T_;
  std::vector<double> values_;
};

/// Off-diagonal stencil weights shared by A, B and G.
struct Stencil {
  double west;    // ad/dx^2 - bd/(2dx), couples node i to i-1
  double east;    // ad/dx^2 + bd/(2dx), couples node i to i+1
  double centre;  // 2ad/dx^2 + cd
};

Stencil make_stencil(const SchemeConfig& cfg, const L1Weights& weights);

Tridiagonal assemble_A(const SchemeConfig& cfg, const L1Weights& weights);
Tridiagonal assemble_B(const SchemeConfig& cfg, const L1Weights& weights);
Tridiagonal assemble_C(const SchemeConfig& cfg, const Tridiagonal& A);

/// Length n-1: west * u^k_0 in the first slot, east * u^k_n in the last.
std::vector<double> boundary_vector_G(const SchemeConfig& cfg, const L1Weights& weights,
                                      int k);

/// Matrices and data fixed over one solve.
struct SchemeOperators {
  L1Weights weights;
  Tridiagonal A;
  Tridiagonal B;
  Tridiagonal C;
  BoundaryData data;
};

SchemeOperators prepare_operators(const SchemeConfig& cfg);

/// Interior values (nodes 1..n-1) of level k+1, given levels 0..k of
/// `surface` already filled in.
std::vector<double> step(const SchemeConfig& cfg, const SchemeOperators& ops,
                         const SolutionSurface& surface, int k);

using WarningSink = std::function<void(std::string_view)>;

/// Runs the weighted scheme to maturity.  A failed stability verdict is
/// reported through `warn` (when set) and stored on the surface.
SolutionSurface solve_surface(const SchemeConfig& cfg, const WarningSink& warn = {});

/// Price at spot Z0: u(ln Z0, T) interpolated linearly between nodes.
double price(const SchemeConfig& cfg, const WarningSink& warn = {});

/// Stand-alone fully implicit and fully explicit schemes, written out
/// without the theta blending.  Used to cross-check the weighted solver.
SolutionSurface solve_implicit(const SchemeConfig& cfg);
SolutionSurface solve_explicit(const SchemeConfig& cfg);

}  // namespace fracbs
