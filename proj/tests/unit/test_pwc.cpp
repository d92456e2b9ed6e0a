#include <doctest.h>

#include <cmath>
#include <random>

#include "kent/errors.hpp"
#include "kent/pwc.hpp"
#include "support/oracles.hpp"

using namespace kent;

TEST_CASE("step functions normalize and evaluate right-continuously") {
  const PiecewiseConstantFn u({0.0, 1.0, 2.0, 3.0}, {1.0, 1.0, 0.0});
  CHECK(u.cell_count() == 1);
  CHECK(u.support_min() == 0.0);
  CHECK(u.support_max() == 2.0);
  CHECK(u(0.0) == 1.0);
  CHECK(u(2.0) == 0.0);
  CHECK(u.left_limit(2.0) == 1.0);
  CHECK(u(-1.0) == 0.0);
  CHECK(PiecewiseConstantFn({0.0, 1.0}, {0.0}).is_zero());
}

TEST_CASE("malformed step functions are rejected") {
  CHECK_THROWS_AS(PiecewiseConstantFn({0.0, 1.0}, {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(PiecewiseConstantFn({1.0, 0.0}, {1.0}), DomainError);
  CHECK_THROWS_AS(PiecewiseConstantFn({0.0, NAN}, {1.0}), DomainError);
}

TEST_CASE("l1 distance of simple boxes") {
  const auto box = PiecewiseConstantFn::indicator(0.0, 1.0);
  CHECK(l1_distance(box, PiecewiseConstantFn{}) == doctest::Approx(1.0));
  CHECK(l1_distance(box, box) == 0.0);
  CHECK(l1_distance(box, PiecewiseConstantFn::indicator(0.5, 1.5)) == doctest::Approx(1.0));
}

TEST_CASE("total variation counts the jumps to and from zero") {
  const PiecewiseConstantFn u({0.0, 1.0, 2.0}, {1.0, -1.0});
  CHECK(u.total_variation() == doctest::Approx(4.0));
  CHECK(total_variation_on(u, 0.5, 1.5) == doctest::Approx(2.0));
  CHECK(PiecewiseConstantFn{}.total_variation() == 0.0);
}

TEST_CASE("reflection and shift preserve integral and norms") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = testing::random_pwc(rng, 2.0, 1.0, 7);
    const auto r = u.reflected();
    CHECK(r.integral() == doctest::Approx(u.integral()).epsilon(1e-12));
    CHECK(r.total_variation() == doctest::Approx(u.total_variation()).epsilon(1e-12));
    CHECK(r.reflected() == u);
    CHECK(u(0.3) == r.left_limit(-0.3));
    CHECK(u.shifted(0.7)(1.0) == u(0.3));
  }
}

TEST_CASE("l1 distance is a metric on random data") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_pwc(rng, 1.0, 1.0, 5);
    const auto b = testing::random_pwc(rng, 1.5, 1.0, 6);
    const auto c = testing::random_pwc(rng, 0.5, 2.0, 4);
    CHECK(l1_distance(a, b) == doctest::Approx(l1_distance(b, a)).epsilon(1e-14));
    CHECK(l1_distance(a, c) <= l1_distance(a, b) + l1_distance(b, c) + 1e-12);
    CHECK(std::abs(a.integral() - b.integral()) <= l1_distance(a, b) + 1e-12);
    const auto sum = a + b;
    CHECK(sum.integral() == doctest::Approx(a.integral() + b.integral()).epsilon(1e-12));
  }
}

TEST_CASE("integrate_pair matches a midpoint quadrature") {
  std::mt19937_64 rng(3);
  const auto u = testing::random_pwc(rng, 1.0, 1.0, 5);
  const auto v = testing::random_pwc(rng, 1.0, 1.0, 5);
  auto phi = [](double a, double b) { return a * b; };
  double quad = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + 2.0 * (i + 0.5) / n;
    quad += u(x) * v(x) * 2.0 / n;
  }
  CHECK(integrate_pair(u, v, phi) == doctest::Approx(quad).epsilon(1e-3));
}
