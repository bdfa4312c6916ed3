#include <doctest.h>

#include <cmath>
#include <random>

#include "fracbs/errors.hpp"
#include "fracbs/model.hpp"
#include "oracles.hpp"

using namespace fracbs;

TEST_CASE("to_log_coords") {
  CHECK(to_log_coords(1.0) == 0.0);
  CHECK(to_log_coords(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  // 2 atanh(1/3) series, long double.
  CHECK(to_log_coords(2.0) == doctest::Approx(0.69314718055994531).epsilon(1e-15));
  CHECK_THROWS_AS(to_log_coords(0.0), DomainError);
  CHECK_THROWS_AS(to_log_coords(-1.0), DomainError);
}

TEST_CASE("to_log_coords inverts exp over [1e-8, 1e8]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lz(std::log(1e-8), std::log(1e8));
  for (int i = 0; i < 2000; ++i) {
    const double z = std::exp(lz(rng));
    CHECK(std::abs(std::exp(to_log_coords(z)) - z) <= 1e-14 * z);
  }
}

TEST_CASE("payoff") {
  const double K = 2.0;
  CHECK(payoff(std::log(K), K) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(payoff(std::log(2 * K), K) == doctest::Approx(K));
  CHECK(payoff(0.0, 2.0) == 0.0);

  SUBCASE("monotone, non-negative, zero below ln K") {
    double prev = 0.0;
    for (double x = -5.0; x <= 5.0; x += 0.01) {
      const double v = payoff(x, K);
      CHECK(v >= 0.0);
      CHECK(v >= prev);
      if (x <= std::log(K)) CHECK(v == 0.0);
      prev = v;
    }
  }
}

TEST_CASE("boundary values") {
  MarketParams p;  // r = 0.04, K = 2, T = 4
  for (double t : {0.0, p.T / 2, p.T}) CHECK(boundary_lower(t) == 0.0);

  CHECK(boundary_upper(0.0, p, 10.0) == doctest::Approx(std::exp(10.0) - 2.0).epsilon(1e-15));
  CHECK(boundary_upper(4.0, p, 10.0) ==
        doctest::Approx(std::exp(10.0) - 2.0 * std::exp(-0.16)).epsilon(1e-15));

  MarketParams no_rate = p;
  no_rate.r = 0.0;
  for (double t : {0.0, 1.0, 3.5})
    CHECK(boundary_upper(t, no_rate, 10.0) == doctest::Approx(std::exp(10.0) - 2.0));

  SUBCASE("initial/boundary compatibility") {
    for (double xm : {1.0, 3.0, 10.0}) CHECK(boundary_upper(0.0, p, xm) == doctest::Approx(payoff(xm, p.K)));
  }
  SUBCASE("literal formula discounts over the remaining time") {
    CHECK(boundary_upper(0.0, p, 10.0, UpperBoundary::kForwardTime) ==
          doctest::Approx(std::exp(10.0) - 2.0 * std::exp(-0.16)));
    CHECK(boundary_upper(p.T, p, 10.0, UpperBoundary::kForwardTime) ==
          doctest::Approx(std::exp(10.0) - 2.0));
  }
}

TEST_CASE("coefficients") {
  MarketParams p;
  p.sigma = 1.0;
  p.r = 0.04;
  auto c = coefficients(p);
  CHECK(c.a == doctest::Approx(0.5));
  CHECK(c.b == doctest::Approx(-0.46));
  CHECK(c.c == doctest::Approx(0.04));

  p.r = 0.5;
  CHECK(coefficients(p).b == 0.0);

  p.sigma = 2.0;
  p.r = 0.0;
  c = coefficients(p);
  CHECK(c.a == 2.0);
  CHECK(c.b == -2.0);
  CHECK(c.c == 0.0);

  // (a, b, c) -> (sigma, r) recovers the inputs.
  p = {0.37, 0.11, 2.0, 1.0, 1.0, 0.5};
  c = coefficients(p);
  CHECK(std::sqrt(2.0 * c.a) == doctest::Approx(p.sigma));
  CHECK(c.c == p.r);
  CHECK(c.b == doctest::Approx(c.c - c.a));
}

TEST_CASE("parameter validation") {
  MarketParams p;
  CHECK_NOTHROW(p.validate(true));
  p.alpha = 1.0;
  CHECK_NOTHROW(p.validate(false));
  CHECK_THROWS_AS(p.validate(true), DomainError);
  p.alpha = 0.0;
  CHECK_THROWS_AS(p.validate(false), DomainError);
  p = MarketParams{};
  p.sigma = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = MarketParams{};
  p.K = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);

  GridSpec g;
  CHECK_NOTHROW(g.validate());
  CHECK(g.dx() == doctest::Approx(30.0 / 500));
  CHECK(g.dt(4.0) == doctest::Approx(4.0 / 50));
  CHECK(g.x(0) == -20.0);
  CHECK(g.x(g.n) == doctest::Approx(10.0));
  g.n = 2;
  CHECK_THROWS_AS(g.validate(), GridError);
  g = GridSpec{};
  g.x_min = 10.0;
  CHECK_THROWS_AS(g.validate(), GridError);
  g = GridSpec{};
  g.N = 0;
  CHECK_THROWS_AS(g.validate(), GridError);
}

TEST_CASE("put data is consistent at t = 0") {
  MarketParams p;
  GridSpec g;
  const auto put = make_boundary_data(OptionKind::kPut, p, g);
  CHECK(put.lower(0.0) == doctest::Approx(put.initial(g.x_min)));
  CHECK(put.upper(0.0) == put.initial(g.x_max));
  const auto call = make_boundary_data(OptionKind::kCall, p, g);
  CHECK(call.upper(0.0) == doctest::Approx(call.initial(g.x_max)));
  CHECK(call.lower(1.0) == 0.0);
}
