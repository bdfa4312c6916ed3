#include "fracbs/theta_scheme.hpp"

#include <cmath>
#include <string>

#include "fracbs/errors.hpp"

namespace fracbs {

void SchemeConfig::validate() const {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("theta must lie in [0, 1]");
  grid.validate();
  params.validate(/*for_pde=*/true);
}

BoundaryData SchemeConfig::boundary_data() const {
  if (custom_data) return custom_data(params, grid);
  return make_boundary_data(kind, params, grid, upper_mode);
}

SolutionSurface::SolutionSurface(GridSpec grid, double T)
    : grid_(grid),
      T_(T),
      values_((static_cast<std::size_t>(grid.N) + 1) * (static_cast<std::size_t>(grid.n) + 1),
              0.0) {}

double SolutionSurface::value_at(double x, int k) const {
  if (!(x >= grid_.x_min && x <= grid_.x_max))
    throw DomainError("value_at: x outside [x_min, x_max]");
  const double s = (x - grid_.x_min) / grid_.dx();
  int i = static_cast<int>(std::floor(s));
  if (i >= grid_.n) i = grid_.n - 1;
  const double w = s - i;
  return (1.0 - w) * (*this)(i, k) + w * (*this)(i + 1, k);
}

Stencil make_stencil(const SchemeConfig& cfg, const L1Weights& weights) {
  const auto [a, b, c] = coefficients(cfg.params);
  const double d = weights.d;
  const double dx = cfg.grid.dx();
  const double diff = a * d / (dx * dx);
  const double adv = b * d / (2.0 * dx);
  return {diff - adv, diff + adv, 2.0 * diff + c * d};
}

Tridiagonal assemble_A(const SchemeConfig& cfg, const L1Weights& weights) {
  if (cfg.grid.n < 3) throw GridError("assemble_A: n must be at least 3");
  const auto s = make_stencil(cfg, weights);
  return Tridiagonal(static_cast<std::size_t>(cfg.grid.n - 1), -s.west, 1.0 + s.centre, -s.east);
}

// B = I - A, formed so that A + B == I holds bit for bit.
Tridiagonal assemble_B(const SchemeConfig& cfg, const L1Weights& weights) {
  Tridiagonal B = assemble_A(cfg, weights);
  for (auto& v : B.lower) v = -v;
  for (auto& v : B.upper) v = -v;
  for (auto& v : B.diag) v = 1.0 - v;
  return B;
}

Tridiagonal assemble_C(const SchemeConfig& cfg, const Tridiagonal& A) {
  const double th = cfg.theta;
  Tridiagonal C = A;
  for (auto& v : C.lower) v *= 1.0 - th;
  for (auto& v : C.upper) v *= 1.0 - th;
  for (auto& v : C.diag) v = th + (1.0 - th) * v;
  return C;
}

namespace {

double lower_value(const SchemeConfig& cfg, const BoundaryData& data, int k) {
  return k == 0 ? data.initial(cfg.grid.x_min) : data.lower(k * cfg.grid.dt(cfg.params.T));
}

double upper_value(const SchemeConfig& cfg, const BoundaryData& data, int k) {
  return k == 0 ? data.initial(cfg.grid.x_max) : data.upper(k * cfg.grid.dt(cfg.params.T));
}

void add_boundary(const Stencil& s, double u_lo, double u_hi, double scale,
                  std::span<double> rhs) {
  rhs.front() += scale * s.west * u_lo;
  rhs.back() += scale * s.east * u_hi;
}

}  // namespace

std::vector<double> boundary_vector_G(const SchemeConfig& cfg, const L1Weights& weights, int k) {
  if (k < 0 || k > cfg.grid.N) throw DomainError("boundary_vector_G: level out of range");
  const auto data = cfg.boundary_data();
  std::vector<double> G(static_cast<std::size_t>(cfg.grid.n - 1), 0.0);
  add_boundary(make_stencil(cfg, weights), lower_value(cfg, data, k), upper_value(cfg, data, k),
               1.0, G);
  return G;
}

SchemeOperators prepare_operators(const SchemeConfig& cfg) {
  SchemeOperators ops;
  ops.weights = build_weights(cfg.params.alpha, cfg.grid.N, cfg.grid.dt(cfg.params.T));
  ops.A = assemble_A(cfg, ops.weights);
  ops.B = assemble_B(cfg, ops.weights);
  ops.C = assemble_C(cfg, ops.A);
  ops.data = cfg.boundary_data();
  return ops;
}

std::vector<double> step(const SchemeConfig& cfg, const SchemeOperators& ops,
                         const SolutionSurface& surface, int k) {
  if (k < 0 || k >= cfg.grid.N) throw DomainError("step: level out of range");
  const std::size_t m = static_cast<std::size_t>(cfg.grid.n - 1);
  const double th = cfg.theta;

  std::vector<double> rhs(m);
  accumulate_history(
      ops.weights, k, [&](int j) { return surface.level(j); }, 1, rhs);

  const auto s = make_stencil(cfg, ops.weights);
  const auto uk = surface.level(k);
  if (th != 0.0) {
    ops.B.apply_add(uk.subspan(1, m), th, rhs);
    add_boundary(s, uk.front(), uk.back(), th, rhs);
  }
  if (th != 1.0) {
    add_boundary(s, lower_value(cfg, ops.data, k + 1), upper_value(cfg, ops.data, k + 1),
                 1.0 - th, rhs);
    return thomas_solve(ops.C, rhs);
  }
  return rhs;
}

namespace {

SolutionSurface start_surface(const SchemeConfig& cfg, const BoundaryData& data) {
  SolutionSurface surface(cfg.grid, cfg.params.T);
  for (int i = 0; i <= cfg.grid.n; ++i) surface(i, 0) = data.initial(cfg.grid.x(i));
  return surface;
}

void store_level(const SchemeConfig& cfg, const BoundaryData& data, SolutionSurface& surface,
                 int k, std::span<const double> interior) {
  auto level = surface.level(k);
  level.front() = lower_value(cfg, data, k);
  level.back() = upper_value(cfg, data, k);
  std::copy(interior.begin(), interior.end(), level.begin() + 1);
}

}  // namespace

SolutionSurface solve_surface(const SchemeConfig& cfg, const WarningSink& warn) {
  cfg.validate();
  const auto ops = prepare_operators(cfg);
  auto surface = start_surface(cfg, ops.data);

  const double dt = cfg.grid.dt(cfg.params.T);
  surface.verdict =
      stability_verdict(cfg.theta, cfg.params.alpha, coefficients(cfg.params), dt, cfg.grid.dx());
  if (!surface.verdict.stable && warn) {
    warn("stability condition fails for theta=" + std::to_string(cfg.theta) +
         " alpha=" + std::to_string(cfg.params.alpha) + " n=" + std::to_string(cfg.grid.n) +
         " N=" + std::to_string(cfg.grid.N) + "; the solution may blow up");
  }

  for (int k = 0; k < cfg.grid.N; ++k) store_level(cfg, ops.data, surface, k + 1, step(cfg, ops, surface, k));
  return surface;
}

double price(const SchemeConfig& cfg, const WarningSink& warn) {
  return solve_surface(cfg, warn).value_at_maturity(to_log_coords(cfg.params.Z0));
}

namespace {

// Pointwise stencil for the reference schemes, independent of Tridiagonal.
struct PointStencil {
  double west, east, centre;
};

PointStencil point_stencil(const SchemeConfig& cfg, double d) {
  const double a = 0.5 * cfg.params.sigma * cfg.params.sigma;
  const double b = cfg.params.r - a;
  const double c = cfg.params.r;
  const double dx = cfg.grid.dx();
  return {a * d / (dx * dx) - b * d / (2.0 * dx), a * d / (dx * dx) + b * d / (2.0 * dx),
          2.0 * a * d / (dx * dx) + c * d};
}

// sum_{j=0}^{k-1} (b_j - b_{j+1}) u_i^{k-j} + b_k u_i^0 written out per node.
double history_at(const SolutionSurface& s, const std::vector<double>& b, int i, int k) {
  double h = b[k] * s(i, 0);
  for (int j = 0; j < k; ++j) h += (b[j] - b[j + 1]) * s(i, k - j);
  return h;
}

}  // namespace

SolutionSurface solve_implicit(const SchemeConfig& cfg) {
  cfg.validate();
  const auto data = cfg.boundary_data();
  const auto w = build_weights(cfg.params.alpha, cfg.grid.N, cfg.grid.dt(cfg.params.T));
  const auto st = point_stencil(cfg, w.d);
  const int n = cfg.grid.n;
  auto surface = start_surface(cfg, data);

  Tridiagonal A(static_cast<std::size_t>(n - 1), -st.west, 1.0 + st.centre, -st.east);
  std::vector<double> rhs(static_cast<std::size_t>(n - 1));
  for (int k = 0; k < cfg.grid.N; ++k) {
    const double lo = lower_value(cfg, data, k + 1);
    const double hi = upper_value(cfg, data, k + 1);
    for (int i = 1; i < n; ++i) rhs[i - 1] = history_at(surface, w.b, i, k);
    rhs.front() += st.west * lo;
    rhs.back() += st.east * hi;
    store_level(cfg, data, surface, k + 1, thomas_solve(A, rhs));
  }
  return surface;
}

SolutionSurface solve_explicit(const SchemeConfig& cfg) {
  cfg.validate();
  const auto data = cfg.boundary_data();
  const auto w = build_weights(cfg.params.alpha, cfg.grid.N, cfg.grid.dt(cfg.params.T));
  const auto st = point_stencil(cfg, w.d);
  const int n = cfg.grid.n;
  auto surface = start_surface(cfg, data);

  std::vector<double> next(static_cast<std::size_t>(n - 1));
  for (int k = 0; k < cfg.grid.N; ++k) {
    for (int i = 1; i < n; ++i) {
      const double bu = st.west * surface(i - 1, k) - st.centre * surface(i, k) +
                        st.east * surface(i + 1, k);
      next[i - 1] = bu + history_at(surface, w.b, i, k);
    }
    store_level(cfg, data, surface, k + 1, next);
  }
  return surface;
}

}  // namespace fracbs
