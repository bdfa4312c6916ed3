#include "fracbs/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "fracbs/closed_form.hpp"
#include "fracbs/errors.hpp"

namespace fracbs {

namespace {

constexpr std::int64_t kBlockSize = 8192;

// Uniform on the open interval (0, 1) from the top 53 bits.
double open_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// log V for the positive stable law; see positive_stable_from_uniforms.
double log_positive_stable(double alpha, double u_angle, double u_exp) {
  const double U = std::numbers::pi * u_angle;
  const double E = -std::log(u_exp);
  return std::log(std::sin(alpha * U)) - std::log(std::sin(U)) / alpha +
         (1.0 - alpha) / alpha * (std::log(std::sin((1.0 - alpha) * U)) - std::log(E));
}

// S = (t / V)^alpha evaluated in log space; V can under/overflow for small alpha.
double inverse_subordinator(double alpha, double t, double u_angle, double u_exp) {
  return std::exp(alpha * (std::log(t) - log_positive_stable(alpha, u_angle, u_exp)));
}

void require_fractional(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

// Running mean / sum of squared deviations, merged with Chan's update.
struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double n1 = static_cast<double>(count);
    const double n2 = static_cast<double>(o.count);
    const double delta = o.mean - mean;
    const double total = n1 + n2;
    mean += delta * n2 / total;
    m2 += o.m2 + delta * delta * n1 * n2 / total;
    count += o.count;
  }
};

}  // namespace

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

double positive_stable_from_uniforms(double alpha, double u_angle, double u_exp) {
  require_fractional(alpha);
  return std::exp(log_positive_stable(alpha, u_angle, u_exp));
}

double sample_positive_stable(double alpha, std::mt19937_64& rng) {
  const double ua = open_uniform(rng);
  const double ue = open_uniform(rng);
  return positive_stable_from_uniforms(alpha, ua, ue);
}

double sample_inverse_subordinator(double alpha, double t, std::mt19937_64& rng) {
  require_fractional(alpha);
  if (!(t > 0.0)) throw DomainError("sample_inverse_subordinator: t must be positive");
  const double ua = open_uniform(rng);
  const double ue = open_uniform(rng);
  return inverse_subordinator(alpha, t, ua, ue);
}

McEstimate mc_price(const MarketParams& params, std::int64_t M, std::uint64_t seed,
                    const McOptions& options) {
  if (M < 2) throw DomainError("mc_price: need at least two samples");
  params.validate();
  require_fractional(params.alpha);

  const std::int64_t blocks = (M + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> partial(static_cast<std::size_t>(blocks));

  auto run_block = [&](std::int64_t b) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(b));
    const std::int64_t begin = b * kBlockSize;
    const std::int64_t end = std::min(M, begin + kBlockSize);
    auto h = [&](double ua, double ue) {
      const double s = inverse_subordinator(params.alpha, params.T, ua, ue);
      return bs_call(params.Z0, params.K, s, params.r, params.sigma);
    };
    Moments m;
    for (std::int64_t i = begin; i < end; ++i) {
      const double ua = open_uniform(rng);
      const double ue = open_uniform(rng);
      m.add(options.antithetic ? 0.5 * (h(ua, ue) + h(1.0 - ua, 1.0 - ue)) : h(ua, ue));
    }
    partial[static_cast<std::size_t>(b)] = m;
  };

  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::int64_t>(options.threads, 1, blocks));
  if (workers == 1) {
    for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::int64_t b = w; b < blocks; b += workers) run_block(b);
      });
  }

  Moments total;
  for (const auto& m : partial) total.merge(m);
  const double variance = total.m2 / static_cast<double>(total.count - 1);
  return {total.mean, std::sqrt(variance / static_cast<double>(total.count)), M, seed};
}

}  // namespace fracbs
