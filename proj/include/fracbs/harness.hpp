#pragma once

// Convergence-order studies, error tables and parameter sweeps.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracbs/mc_oracle.hpp"
#include "fracbs/model.hpp"
#include "fracbs/stability.hpp"

namespace fracbs {

enum class StudyVariable { kTime, kSpace };

std::string to_string(StudyVariable v);

struct OrderReport {
  StudyVariable variable = StudyVariable::kTime;
  double alpha = 0.0;
  double theta = 0.0;
  double empirical_order = 0.0;
  double theoretical_order = 0.0;
  double relative_error = 0.0;

  // Point values and the grids that produced them.
  double u_h = 0.0, u_h2 = 0.0, u_ref = 0.0;
  GridSpec grid_h, grid_h2, grid_ref;
  double eval_x = 0.0;
  double seconds = 0.0;
};

/// log2((u_h - u_ref) / (u_h2 - u_ref)).  Throws DegenerateRefinementError if
/// either difference is zero or the two differ in sign.
double empirical_order(double u_h, double u_h2, double u_ref);

/// Time refinement at a fixed mesh width.  The coarse run uses N_h steps, the
/// second 2 N_h, and the reference N_ref.
struct TemporalProtocol {
  MarketParams market{1.0, 0.04, 2.0, 1.0, 1.0, 0.5};
  double x_min = -1.0;
  double x_max = 1.0;
  int n = 10;  // dx = 0.2
  /// 0 selects steps_for_alpha(alpha).
  int N_h = 0;
  int N_ref = 2600;
  double eval_x = -0.01;

  /// Coarse step counts: 100, 450, 600, 720 and 800
  /// steps on [0, 1] for alpha = 0.99, 0.7, 0.5, 0.3 and 0.1; linear in alpha
  /// in between.
  static int steps_for_alpha(double alpha);
};

/// Space refinement at a fixed time step.  All three runs share the time
/// step so that the temporal error cancels in the differences; the
/// reference mesh is `ref_factor` times finer than the coarse one.
struct SpatialProtocol {
  MarketParams market{1.0, 0.04, 2.0, 1.0, 1.0, 0.5};
  double x_min = -1.0;
  double x_max = 10.0;
  int n_h = 200;  // dx = 0.055
  int N = 20;     // dt = 0.05
  int ref_factor = 16;
  /// Shift the interval (keeping its length) so that ln K is a node of every
  /// mesh; otherwise the payoff kink lands at a different cell offset on each
  /// mesh and the error is not a smooth function of dx.
  bool align_strike = true;
  /// Snapped to the nearest coarse node, which is a node of all three meshes.
  double eval_x = -0.01;
  /// Replaces the call data, e.g. for a smooth manufactured problem.
  std::function<BoundaryData(const MarketParams&, const GridSpec&)> custom_data;
};

OrderReport run_temporal_study(double alpha, double theta, const TemporalProtocol& protocol = {});
OrderReport run_spatial_study(double alpha, double theta, const SpatialProtocol& protocol = {});

struct ErrorGridCell {
  double theta = 0.0;
  int n = 0;
  int N = 0;
  double price = 0.0;
  double reference = 0.0;
  double relative_error = 0.0;  // |price - reference| / reference
  double seconds = 0.0;
  StabilityVerdict verdict;
};

struct ErrorGridSpec {
  MarketParams market{1.0, 0.04, 2.0, 4.0, 1.0, 0.999};
  double x_min = -20.0;
  double x_max = 10.0;
  std::vector<double> thetas{0.0, 0.25, 0.5, 0.6, 0.9};
  std::vector<std::pair<int, int>> grids{{5000, 140}, {3000, 100}, {500, 50},
                                         {100, 20},   {200, 200},  {50, 1300}};
  /// Reference price; the classical Black-Scholes value when unset.
  std::optional<double> reference;
  UpperBoundary upper_mode = UpperBoundary::kConsistent;
  unsigned threads = 1;
};

/// One solve per (theta, grid) cell, row-major in thetas.  Unstable cells are
/// kept with whatever error they produce.
std::vector<ErrorGridCell> run_error_grid(const ErrorGridSpec& spec);

struct SweepCell {
  double T = 0.0;
  double K = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double price = 0.0;
  std::optional<McEstimate> mc;
  double seconds = 0.0;
};

struct AlphaSweepSpec {
  MarketParams market{1.0, 0.04, 2.0, 4.0, 1.0, 0.5};
  GridSpec grid{-20.0, 10.0, 1000, 140};
  std::vector<double> maturities{0.5, 1.0, 2.0, 4.0};
  std::vector<double> alphas{0.3, 0.5, 0.7, 0.9};
  /// Strike sweep at market.T; empty skips it.
  std::vector<double> strikes;
  /// optimal_theta(alpha) per cell when unset.
  std::optional<double> theta;
  /// Monte Carlo overlay per cell when positive.
  std::int64_t mc_samples = 0;
  std::uint64_t seed = 12345;
  UpperBoundary upper_mode = UpperBoundary::kConsistent;
  unsigned threads = 1;
};

struct AlphaSweepResult {
  std::vector<SweepCell> by_maturity;  // maturities x alphas, row-major
  std::vector<SweepCell> by_strike;    // strikes x alphas, row-major
};

AlphaSweepResult run_alpha_sweep(const AlphaSweepSpec& spec);

/// Runs task(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace fracbs
