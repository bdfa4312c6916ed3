#pragma once

#include <cstdint>
#include <random>

#include "fracbs/model.hpp"

namespace fracbs {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t M = 0;
  std::uint64_t seed = 0;
};

/// Independent stream `stream` of a seed.  Streams of one seed are seeded
/// through seed_seq so that block-parallel runs never share a sequence.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

/// One draw of V = U_alpha(1) with E exp(-kV) = exp(-k^alpha), by the
/// Kanter / Chambers-Mallows-Stuck representation
///
///   V = sin(alpha U) / sin(U)^{1/alpha} * (sin((1-alpha) U) / E)^{(1-alpha)/alpha}
///
/// with U ~ Uniform(0, pi) and E ~ Exp(1).
double sample_positive_stable(double alpha, std::mt19937_64& rng);

/// Same transform driven by explicit uniforms in (0,1); used for antithetic
/// pairs and coupled sweeps over alpha.
double positive_stable_from_uniforms(double alpha, double u_angle, double u_exp);

/// S_alpha(t) = (t / V)^alpha, the exact marginal of the inverse stable
/// subordinator.
double sample_inverse_subordinator(double alpha, double t, std::mt19937_64& rng);

struct McOptions {
  /// Replace each draw by the average over the pair (u, 1-u).
  bool antithetic = false;
  /// Worker threads; the estimate does not depend on this value.
  unsigned threads = 1;
};

/// E[bs_call(Z0, K, S_alpha(T), r, sigma)].  Throws DomainError for M < 2 or
/// alpha outside (0,1).
McEstimate mc_price(const MarketParams& params, std::int64_t M, std::uint64_t seed,
                    const McOptions& options = {});

}  // namespace fracbs
