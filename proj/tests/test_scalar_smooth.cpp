#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "germext/scalar_smooth.hpp"
#include "oracles.hpp"

using namespace germext;

TEST_CASE("smooth step flat regions and symmetry") {
  const auto sigma = make_smooth_step();
  CHECK(sigma(-1.0) == 0.0);
  CHECK(sigma(0.0) == 0.0);
  CHECK(sigma(2.0) == 1.0);
  CHECK(sigma(1.0) == 1.0);
  CHECK(sigma(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_deriv(sigma, -1.0, 3) == 0.0);
  CHECK(eval_deriv(sigma, 1.5, 2) == 0.0);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int i = 0; i < 1000; ++i) {
    const double s = u(rng);
    CHECK(std::abs(sigma(s) + sigma(1.0 - s) - 1.0) <= 1e-14);
  }
}

TEST_CASE("smooth step is monotone and matches the closed form") {
  const auto sigma = make_smooth_step();
  double prev = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double s = -0.25 + 1.5 * i / 2000.0;
    const double v = sigma(s);
    CHECK(v >= prev);
    CHECK(v == doctest::Approx(static_cast<double>(oracle::step(s))).epsilon(1e-13));
    prev = v;
  }
}

TEST_CASE("bump and truncator values") {
  const auto psi = make_bump(1.0 / 3.0, 0.5);
  CHECK(psi(0.0) == 1.0);
  CHECK(psi(0.6) == 0.0);
  CHECK(psi(-0.6) == 0.0);
  CHECK(psi(5.0 / 12.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(psi(-5.0 / 12.0) == doctest::Approx(0.5).epsilon(1e-14));

  const auto h = make_truncator();
  CHECK(h.inner() == 1.0 / 3.0);
  CHECK(h.outer() == 0.5);
  CHECK(h(0.2) == 0.2);
  CHECK(h(0.7) == 0.0);
  CHECK(eval_deriv(h, 0.0, 1) == 1.0);
  CHECK(eval_deriv(h, 0.1, 1) == 1.0);
  CHECK(eval_deriv(h, 0.1, 2) == 0.0);
  CHECK(eval_deriv(h, 0.9, 1) == 0.0);
}

TEST_CASE("truncator flat regions are bit-exact") {
  const auto h = make_truncator();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> inner(-1.0 / 3.0, 1.0 / 3.0);
  std::uniform_real_distribution<double> outer(0.5, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double s = inner(rng);
    CHECK(h(s) == s);
    const double t = outer(rng);
    CHECK(h(t) == 0.0);
    CHECK(h(-t) == 0.0);
  }
  CHECK(h(1.0 / 3.0) == 1.0 / 3.0);
  CHECK(h(0.5) == 0.0);
}

TEST_CASE("truncator envelope: |h(s)| <= |s| and |h(s)| < b") {
  const auto h = make_truncator(0.2, 0.9);
  for (int i = -3000; i <= 3000; ++i) {
    const double s = i / 1000.0;
    CHECK(std::abs(h(s)) <= std::abs(s));
    CHECK(std::abs(h(s)) < 0.9);
  }
}

TEST_CASE("derivatives agree with Richardson differences on the transition") {
  const double a = 1.0 / 3.0, b = 0.5;
  const auto h = make_truncator(a, b);
  const auto psi = make_bump(a, b);
  const auto sigma = make_smooth_step();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(a, b);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int i = 0; i < 100; ++i) {
    const double s = u(rng);
    const double st = unit(rng);
    for (int k = 0; k <= 3; ++k) {
      const double ref_h = static_cast<double>(
          oracle::fd([&](long double x) { return oracle::truncator(a, b, x); }, s, k, 1e-3L));
      const double ref_p =
          static_cast<double>(oracle::fd([&](long double x) { return oracle::bump(a, b, x); }, s, k, 1e-3L));
      const double ref_s = static_cast<double>(oracle::fd(oracle::step, st, k, 1e-3L));
      CHECK(oracle::rel_err(eval_deriv(h, s, k), ref_h, 1.0) <= 1e-6);
      CHECK(oracle::rel_err(eval_deriv(psi, s, k), ref_p, 1.0) <= 1e-6);
      CHECK(oracle::rel_err(eval_deriv(sigma, st, k), ref_s, 1.0) <= 1e-6);
    }
  }
  CHECK(oracle::rel_err(eval_deriv(sigma, 0.3, 1),
                        static_cast<double>(oracle::fd(oracle::step, 0.3L, 1, 1e-2L, 6))) <= 1e-8);
}

TEST_CASE("derivatives are continuous across the gluing points") {
  const auto h = make_truncator();
  const double delta = 1e-13;
  for (double g : {1.0 / 3.0, 0.5, -1.0 / 3.0, -0.5}) {
    for (int k = 0; k <= h.max_deriv_order(); ++k) {
      CHECK(std::abs(h.derivative(g - delta, k) - h.derivative(g + delta, k)) <= 1e-10);
    }
  }
}

TEST_CASE("derivative sup bounds the sampled derivatives") {
  const auto h = make_truncator();
  for (int k = 0; k <= h.max_deriv_order(); ++k) {
    double sampled = 0.0;
    for (int i = 0; i <= 10000; ++i) sampled = std::max(sampled, std::abs(h.derivative(-0.6 + 1.2 * i / 10000.0, k)));
    CHECK(std::isfinite(h.derivative_sup(k)));
    CHECK(sampled <= h.derivative_sup(k));
    CHECK(h.derivative(0.5 + 1e-3, k) == 0.0);
  }
}

TEST_CASE("derivatives() returns higher orders than the configured limit") {
  const auto sigma = make_smooth_step(2);
  CHECK_THROWS_AS(sigma.derivative(0.4, 3), std::out_of_range);
  const auto all = sigma.derivatives(0.4, 4);
  REQUIRE(all.size() == 5);
  CHECK(all[0] == doctest::Approx(sigma(0.4)));
  CHECK(all[3] == doctest::Approx(static_cast<double>(oracle::fd(oracle::step, 0.4L, 3, 1e-3L))).epsilon(1e-6));
}

TEST_CASE("kernel underflow near zero gives exact zero") {
  const auto k = detail::kernel_taylor(1e-4, 3);
  for (double c : k) CHECK(c == 0.0);
  const auto sigma = make_smooth_step();
  CHECK(sigma(1e-4) == 0.0);
  CHECK(sigma(1.0 - 1e-4) == 1.0);
}

TEST_CASE("invalid thresholds are rejected") {
  CHECK_THROWS_AS(make_bump(0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_bump(0.6, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_bump(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_truncator(-1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(eval_deriv(make_truncator(), 0.1, 7), std::out_of_range);
}
