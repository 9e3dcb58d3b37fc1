#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "germext/chebyshev.hpp"
#include "germext/scalar_smooth.hpp"
#include "germext/spaces.hpp"

using namespace germext;

TEST_CASE("norm examples") {
  CHECK(sup_norm(GridFn(std::vector<double>(8, 0.0))) == 0.0);
  CHECK(sup_norm(GridFn::from_function(65, [](double t) { return t; })) == 1.0);
  CHECK(p_norm(PVector({3.0, 4.0}, 2)) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(p_norm(PVector({1.0, 1.0}, 4)) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  CHECK(p_norm(PVector({1e200, 1e200}, 2)) == doctest::Approx(std::sqrt(2.0) * 1e200));
}

TEST_CASE("element validation") {
  CHECK_THROWS_AS(GridFn({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridFn({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(PVector({1.0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(PVector({1.0}, 0), std::invalid_argument);
  CHECK_THROWS(space_kind_from_string("banach"));
  CHECK(space_kind_from_string("pvec") == SpaceKind::pvec);
  CHECK(to_string(SpaceKind::cheb) == "cheb");
}

TEST_CASE("lincomb examples and mismatch") {
  const Element x = PVector({1.0, 2.0});
  const Element y = PVector({3.0, 4.0});
  const Element sum = lincomb(1.0, x, 1.0, y);
  const auto s = values(sum);
  CHECK(s[0] == 4.0);
  CHECK(s[1] == 6.0);
  CHECK(norm(lincomb(1.0, x, -1.0, x)) == 0.0);
  const Element doubled = lincomb(2.0, PVector({1.0, 0.0}), 0.0, PVector({0.0, 1.0}));
  const auto e = values(doubled);
  CHECK(e[0] == 2.0);
  CHECK(e[1] == 0.0);
  CHECK_THROWS_AS(lincomb(1.0, x, 1.0, PVector({1.0, 2.0, 3.0})), std::invalid_argument);
  CHECK_THROWS_AS(lincomb(1.0, x, 1.0, GridFn({1.0, 2.0})), std::invalid_argument);
  CHECK_THROWS_AS(lincomb(1.0, x, 1.0, PVector({1.0, 2.0}, 4)), std::invalid_argument);
}

TEST_CASE("norm axioms on random samples") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> lam(-10.0, 10.0);
  const Space spaces[] = {{SpaceKind::grid, 33, 2, 0}, {SpaceKind::pvec, 16, 4, 0}, {SpaceKind::cheb, 17, 2, 2}};
  for (const auto& sp : spaces) {
    for (int i = 0; i < 1000; ++i) {
      const Element x = random_element(sp, 1.0 + i % 7, rng);
      const Element y = random_element(sp, 0.5, rng);
      const double l = lam(rng);
      CHECK(norm(scale(l, x)) == doctest::Approx(std::abs(l) * norm(x)).epsilon(1e-12));
      CHECK(norm(lincomb(1.0, x, 1.0, y)) <= (norm(x) + norm(y)) * (1.0 + 1e-12));
      CHECK(norm(x) == doctest::Approx(1.0 + i % 7).epsilon(1e-12));
      CHECK(space_of(x) == sp);
    }
  }
}

TEST_CASE("pointwise_apply examples") {
  const auto h = make_truncator();
  const auto hfun = [&h](double s) { return h(s); };
  const GridFn c02(std::vector<double>(9, 0.2));
  const GridFn out = pointwise_apply(hfun, c02);
  for (double v : out.samples()) CHECK(v == 0.2);
  const GridFn far = pointwise_apply(hfun, GridFn(std::vector<double>(9, 10.0)));
  for (double v : far.samples()) CHECK(v == 0.0);
  const auto x = GridFn::from_function(9, [](double t) { return std::sin(5 * t); });
  const auto same = pointwise_apply([](double s) { return s; }, x);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(same[i] == x[i]);
}

TEST_CASE("pointwise_apply commutes with restriction to a coarser grid") {
  const auto h = make_truncator();
  const auto g = [&h](double s) { return h(s); };
  const auto fine = GridFn::from_function(129, [](double t) { return 0.7 * std::cos(9 * t); });
  const auto applied = pointwise_apply(g, fine);
  std::vector<double> coarse_vals;
  std::vector<double> applied_coarse;
  for (std::size_t i = 0; i < 129; i += 4) {
    coarse_vals.push_back(fine[i]);
    applied_coarse.push_back(applied[i]);
  }
  const auto coarse_applied = pointwise_apply(g, GridFn(coarse_vals));
  for (std::size_t i = 0; i < applied_coarse.size(); ++i) CHECK(coarse_applied[i] == applied_coarse[i]);
}

TEST_CASE("quadrature") {
  CHECK(quadrature(GridFn(std::vector<double>(65, 2.5))) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(std::abs(quadrature(GridFn::from_function(65, [](double t) { return t; })) - 0.5) <= 1e-14);
  CHECK(std::abs(quadrature(GridFn::from_function(65, [](double t) { return t * t * t; })) - 0.25) <= 1e-14);
  // Simpson's error on t^4 is exactly (b - a) h^4 / 180 * 4! with h = 1/64.
  const double q4 = quadrature(GridFn::from_function(65, [](double t) { return t * t * t * t; }));
  CHECK(std::abs(q4 - 0.2) <= 1e-8);
  CHECK(q4 - 0.2 == doctest::Approx(24.0 / 180.0 / std::pow(64.0, 4)).epsilon(1e-6));
  CHECK_THROWS_AS(quadrature(GridFn(std::vector<double>(64, 1.0))), std::invalid_argument);
}

TEST_CASE("chebyshev helpers") {
  const auto nodes = chebyshev::gauss_nodes(8);
  std::vector<double> vals;
  for (double xi : nodes) vals.push_back(1.0 - 2.0 * xi + 3.0 * xi * xi * xi);
  const auto c = chebyshev::fit_gauss(vals, 7);
  const auto m = chebyshev::to_monomial(c);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(-2.0));
  CHECK(std::abs(m[2]) <= 1e-14);
  CHECK(m[3] == doctest::Approx(3.0));
  CHECK(chebyshev::clenshaw(c, 0.3) == doctest::Approx(1.0 - 0.6 + 3.0 * 0.027));
  const auto dc = chebyshev::to_monomial(chebyshev::differentiate(c));
  CHECK(dc[0] == doctest::Approx(-2.0));
  CHECK(dc[2] == doctest::Approx(9.0));
}

TEST_CASE("ChebFn differentiation is exact on polynomials") {
  const auto cube = ChebFn::from_function([](double t) { return t * t * t; }, 3);
  const auto d = cube.derivative();
  const auto want = ChebFn::from_function([](double t) { return 3 * t * t; }, 2);
  REQUIRE(d.degree() == 2);
  for (std::size_t k = 0; k <= 2; ++k) CHECK(d.coeffs()[k] == doctest::Approx(want.coeffs()[k]).epsilon(1e-13));
  CHECK(ChebFn({5.0}).derivative().coeffs()[0] == 0.0);
}

TEST_CASE("cn_norm uses derivatives up to the smoothness order") {
  const auto x = ChebFn::from_function([](double t) { return 0.5 * t * t; }, 4, 1);
  CHECK(cn_norm(x) == doctest::Approx(1.0).epsilon(1e-12));  // max |x'| = 1 at t = 1
  const auto x0 = ChebFn::from_function([](double t) { return 0.5 * t * t; }, 4, 0);
  CHECK(cn_norm(x0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cheb_compose examples") {
  const auto h = make_truncator();
  const auto x = ChebFn::from_function([](double t) { return 0.3 * std::cos(3 * t); }, 24);
  const auto id = cheb_compose([](double s) { return s; }, x);
  for (std::size_t k = 0; k <= x.degree(); ++k) CHECK(std::abs(id.value.coeffs()[k] - x.coeffs()[k]) <= 1e-12);

  const auto c = cheb_compose([&h](double s) { return h(s); }, ChebFn({0.2}));
  CHECK(c.value.coeffs()[0] == doctest::Approx(0.2).epsilon(1e-15));

  const auto ramp = ChebFn::from_function([](double t) { return t / 4.0; }, 16);
  const auto hr = cheb_compose([&h](double s) { return h(s); }, ramp);
  for (int i = 0; i < 100; ++i) {
    const double t = (i + 0.5) / 100.0;
    CHECK(std::abs(hr.value(t) - h(t / 4.0)) <= 1e-8);
  }
  CHECK(hr.aliasing_error <= 1e-12);
}

TEST_CASE("zero and scalar elements") {
  CHECK(norm(zero_element({SpaceKind::cheb, 9, 2, 3})) == 0.0);
  const Element s = scalar_element(-2.5);
  CHECK(values(s).size() == 1);
  CHECK(norm(s) == 2.5);
  const Element w = with_values(s, {4.0});
  CHECK(values(w)[0] == 4.0);
}
