#include "fracbs/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "fracbs/closed_form.hpp"
#include "fracbs/errors.hpp"
#include "fracbs/theta_scheme.hpp"

namespace fracbs {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string to_string(StudyVariable v) { return v == StudyVariable::kTime ? "time" : "space"; }

double empirical_order(double u_h, double u_h2, double u_ref) {
  const double coarse = u_h - u_ref;
  const double fine = u_h2 - u_ref;
  if (coarse == 0.0 || fine == 0.0)
    throw DegenerateRefinementError("empirical_order: a refinement error is exactly zero");
  if ((coarse > 0.0) != (fine > 0.0))
    throw DegenerateRefinementError("empirical_order: refinement errors change sign");
  return std::log2(coarse / fine);
}

int TemporalProtocol::steps_for_alpha(double alpha) {
  static constexpr std::array<std::pair<double, double>, 5> table{
      {{0.1, 800.0}, {0.3, 720.0}, {0.5, 600.0}, {0.7, 450.0}, {0.99, 100.0}}};
  if (alpha <= table.front().first) return static_cast<int>(table.front().second);
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto [a1, n1] = table[i];
    if (alpha <= a1) {
      const auto [a0, n0] = table[i - 1];
      return static_cast<int>(std::lround(n0 + (alpha - a0) / (a1 - a0) * (n1 - n0)));
    }
  }
  return static_cast<int>(table.back().second);
}

OrderReport run_temporal_study(double alpha, double theta, const TemporalProtocol& protocol) {
  const auto start = Clock::now();
  SchemeConfig cfg;
  cfg.theta = theta;
  cfg.params = protocol.market;
  cfg.params.alpha = alpha;

  const int N_h = protocol.N_h > 0 ? protocol.N_h : TemporalProtocol::steps_for_alpha(alpha);
  auto solve_at = [&](int N, GridSpec& used) {
    cfg.grid = {protocol.x_min, protocol.x_max, protocol.n, N};
    used = cfg.grid;
    return solve_surface(cfg).value_at_maturity(protocol.eval_x);
  };

  OrderReport rep;
  rep.variable = StudyVariable::kTime;
  rep.alpha = alpha;
  rep.theta = theta;
  rep.eval_x = protocol.eval_x;
  rep.u_h = solve_at(N_h, rep.grid_h);
  rep.u_h2 = solve_at(2 * N_h, rep.grid_h2);
  rep.u_ref = solve_at(protocol.N_ref, rep.grid_ref);
  rep.empirical_order = empirical_order(rep.u_h, rep.u_h2, rep.u_ref);
  rep.theoretical_order = 2.0 - alpha;
  rep.relative_error = std::abs(rep.empirical_order - rep.theoretical_order) / rep.theoretical_order;
  rep.seconds = seconds_since(start);
  return rep;
}

OrderReport run_spatial_study(double alpha, double theta, const SpatialProtocol& protocol) {
  if (protocol.ref_factor < 3) throw DomainError("spatial study: ref_factor must be at least 3");
  const auto start = Clock::now();
  SchemeConfig cfg;
  cfg.theta = theta;
  cfg.params = protocol.market;
  cfg.params.alpha = alpha;
  cfg.custom_data = protocol.custom_data;

  const double length = protocol.x_max - protocol.x_min;
  const double h = length / protocol.n_h;
  double x_min = protocol.x_min;
  if (protocol.align_strike && !protocol.custom_data) {
    const double kink = std::log(protocol.market.K);
    x_min = kink - std::round((kink - protocol.x_min) / h) * h;
  }
  const int node = static_cast<int>(std::lround((protocol.eval_x - x_min) / h));
  if (node < 1 || node >= protocol.n_h) throw DomainError("spatial study: eval_x is not interior");
  const double x_eval = x_min + node * h;

  auto solve_at = [&](int refine, GridSpec& used) {
    cfg.grid = {x_min, x_min + length, protocol.n_h * refine, protocol.N};
    used = cfg.grid;
    return solve_surface(cfg)(node * refine, protocol.N);
  };

  OrderReport rep;
  rep.variable = StudyVariable::kSpace;
  rep.alpha = alpha;
  rep.theta = theta;
  rep.eval_x = x_eval;
  rep.u_h = solve_at(1, rep.grid_h);
  rep.u_h2 = solve_at(2, rep.grid_h2);
  rep.u_ref = solve_at(protocol.ref_factor, rep.grid_ref);
  rep.empirical_order = empirical_order(rep.u_h, rep.u_h2, rep.u_ref);
  rep.theoretical_order = 2.0;
  rep.relative_error = std::abs(rep.empirical_order - rep.theoretical_order) / rep.theoretical_order;
  rep.seconds = seconds_since(start);
  return rep;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
          try {
            task(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<ErrorGridCell> run_error_grid(const ErrorGridSpec& spec) {
  const double reference = spec.reference.value_or(
      bs_call(spec.market.Z0, spec.market.K, spec.market.T, spec.market.r, spec.market.sigma));

  std::vector<ErrorGridCell> cells;
  for (double th : spec.thetas)
    for (const auto& [n, N] : spec.grids) {
      ErrorGridCell c;
      c.theta = th;
      c.n = n;
      c.N = N;
      c.reference = reference;
      cells.push_back(c);
    }

  parallel_for(cells.size(), spec.threads, [&](std::size_t i) {
    auto& c = cells[i];
    SchemeConfig cfg;
    cfg.theta = c.theta;
    cfg.params = spec.market;
    cfg.grid = {spec.x_min, spec.x_max, c.n, c.N};
    cfg.upper_mode = spec.upper_mode;
    const auto start = Clock::now();
    const auto surface = solve_surface(cfg);
    c.price = surface.value_at_maturity(to_log_coords(spec.market.Z0));
    c.seconds = seconds_since(start);
    c.verdict = surface.verdict;
    c.relative_error = std::abs(c.price - reference) / reference;
  });
  return cells;
}

AlphaSweepResult run_alpha_sweep(const AlphaSweepSpec& spec) {
  AlphaSweepResult result;
  auto cell = [](double T, double K, double alpha) {
    SweepCell c;
    c.T = T;
    c.K = K;
    c.alpha = alpha;
    return c;
  };
  for (double T : spec.maturities)
    for (double a : spec.alphas) result.by_maturity.push_back(cell(T, spec.market.K, a));
  for (double K : spec.strikes)
    for (double a : spec.alphas) result.by_strike.push_back(cell(spec.market.T, K, a));

  auto evaluate = [&](SweepCell& cell) {
    MarketParams m = spec.market;
    m.T = cell.T;
    m.K = cell.K;
    m.alpha = cell.alpha;
    SchemeConfig cfg;
    cfg.params = m;
    cfg.grid = spec.grid;
    cfg.theta = spec.theta.value_or(optimal_theta(cell.alpha));
    cfg.upper_mode = spec.upper_mode;
    const auto start = Clock::now();
    cell.theta = cfg.theta;
    cell.price = price(cfg);
    // Common seed across cells couples the Monte Carlo overlay between alphas.
    if (spec.mc_samples > 0) cell.mc = mc_price(m, spec.mc_samples, spec.seed);
    cell.seconds = seconds_since(start);
  };

  const std::size_t rows = result.by_maturity.size();
  parallel_for(rows + result.by_strike.size(), spec.threads, [&](std::size_t i) {
    evaluate(i < rows ? result.by_maturity[i] : result.by_strike[i - rows]);
  });
  return result;
}

}  // namespace fracbs
