#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fracbs/caputo_l1.hpp"
#include "fracbs/errors.hpp"

using namespace fracbs;

TEST_CASE("build_weights values") {
  for (double a : {0.1, 0.5, 0.9}) CHECK(build_weights(a, 5, 0.1).b[0] == 1.0);

  const auto w = build_weights(0.5, 4, 1.0);
  CHECK(w.b.size() == 4);
  CHECK(w.b[1] == doctest::Approx(0.41421356237309515).epsilon(1e-15));
  CHECK(w.d == doctest::Approx(0.88622692545275794).epsilon(1e-14));  // sqrt(pi)/2
  CHECK(w.lead() == doctest::Approx(2.0 - std::sqrt(2.0)));

  // The expm1 form agrees with the textbook difference where the latter is exact enough.
  for (int j = 0; j < 50; ++j)
    CHECK(l1_coefficient(0.3, j) ==
          doctest::Approx(std::pow(j + 1.0, 0.7) - std::pow(j, 0.7)).epsilon(1e-13));
}

TEST_CASE("build_weights rejects bad input") {
  CHECK_THROWS_AS(build_weights(0.0, 10, 0.1), DomainError);
  CHECK_THROWS_AS(build_weights(1.0, 10, 0.1), DomainError);
  CHECK_THROWS_AS(build_weights(-0.2, 10, 0.1), DomainError);
  CHECK_THROWS_AS(build_weights(0.5, 0, 0.1), DomainError);
  CHECK_THROWS_AS(build_weights(0.5, 10, 0.0), DomainError);
}

TEST_CASE("weights: positivity, strict decay and telescoping for random alpha") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(1e-6, 1.0 - 1e-6);
  const int N = 200;
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = ua(rng);
    const auto w = build_weights(a, N, 0.01);
    if (w.b[0] != 1.0 || !(w.d > 0.0)) ++failures;
    for (int j = 1; j < N; ++j)
      if (!(w.b[j] > 0.0 && w.b[j] < w.b[j - 1])) ++failures;
    for (int k = 0; k < N; ++k) {
      double s = w.b[k];
      for (int j = 0; j < k; ++j) s += w.b[j] - w.b[j + 1];
      if (std::abs(s - 1.0) > 1e-12) ++failures;
    }
    if (!(w.b[N - 1] < w.b[0])) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("history_combination") {
  const auto w = build_weights(0.5, 10, 0.1);

  SUBCASE("k = 1 unrolls to one term") {
    std::vector<std::vector<double>> lv{{2.0, -1.0}, {5.0, 3.0}};
    const auto h = history_combination(w, lv);
    for (int i = 0; i < 2; ++i)
      CHECK(h[i] == doctest::Approx((w.b[0] - w.b[1]) * lv[1][i] + w.b[1] * lv[0][i]));
  }
  SUBCASE("constant history is reproduced") {
    const std::vector<double> v{1.5, -2.0, 7.25};
    for (int k = 1; k < 10; ++k) {
      std::vector<std::vector<double>> lv(k + 1, v);
      const auto h = history_combination(w, lv);
      for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(h[i] - v[i]) <= 1e-12);
    }
  }
  SUBCASE("alpha = 0.5, k = 2, impulse at level 0") {
    std::vector<std::vector<double>> lv{{1.0}, {0.0}, {0.0}};
    CHECK(history_combination(w, lv)[0] == doctest::Approx(0.31783724519578205).epsilon(1e-14));
  }
  SUBCASE("errors") {
    std::vector<std::vector<double>> bad{{1.0, 2.0}, {1.0}};
    CHECK_THROWS_AS(history_combination(w, bad), ShapeError);
    std::vector<std::vector<double>> single{{1.0}};
    CHECK_THROWS_AS(history_combination(w, single), DomainError);
    std::vector<std::vector<double>> too_long(11, std::vector<double>{1.0});
    CHECK_THROWS_AS(history_combination(w, too_long), DomainError);
  }
}
