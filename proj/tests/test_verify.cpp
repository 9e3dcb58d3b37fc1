#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "germext/borel.hpp"
#include "germext/kmaps.hpp"
#include "germext/polynomials.hpp"
#include "germext/scalar_smooth.hpp"
#include "germext/verify.hpp"

using namespace germext;

namespace {

const Space kGrid{SpaceKind::grid, 16, 2, 0};

std::vector<double> functional(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> phi(d);
  for (auto& p : phi) p = u(rng);
  return phi;
}

}  // namespace

TEST_CASE("directional derivatives of linear and quadratic maps") {
  const auto phi = functional(16, 50);
  const Map lin = [&phi](const Element& x) { return scalar_element(3.0 * pairing(phi, x)); };
  const Map quad = [&phi](const Element& x) {
    const double s = pairing(phi, x);
    return scalar_element(s * s);
  };
  std::mt19937_64 rng(51);
  for (int i = 0; i < 50; ++i) {
    const Element x = random_element(kGrid, 2.0, rng);
    const Element v = random_element(kGrid, 1.0, rng);
    const double pv = pairing(phi, v);
    CHECK(values(directional_deriv(lin, x, v, 1).value)[0] == doctest::Approx(3.0 * pv).epsilon(1e-10));
    CHECK(std::abs(values(directional_deriv(lin, x, v, 2).value)[0]) <= 1e-8);
    CHECK(values(directional_deriv(quad, x, v, 2).value)[0] == doctest::Approx(2.0 * pv * pv).epsilon(1e-6));
    CHECK(std::abs(values(directional_deriv(quad, x, v, 3).value)[0]) <= 1e-4);
    CHECK(values(directional_deriv(quad, x, v, 0).value)[0] == values(quad(x))[0]);
  }
  const Element z = zero_element(kGrid);
  CHECK_THROWS_AS(directional_deriv(lin, z, z, 5), std::invalid_argument);
  CHECK_THROWS_AS(directional_deriv(lin, z, z, -1), std::invalid_argument);
  CHECK_THROWS_AS(directional_deriv(lin, z, z, 1, {0.0, 4}), std::invalid_argument);
}

TEST_CASE("directional derivatives of the truncator") {
  const auto h = make_truncator();
  const Map f = [&h](const Element& x) { return scalar_element(h(values(x)[0])); };
  const Space line{SpaceKind::pvec, 1, 2, 0};
  for (double s : {0.36, 0.4, 0.45}) {
    for (int n = 1; n <= 3; ++n) {
      const auto d = directional_deriv(f, scalar_element(s), scalar_element(1.0), n, {1e-3, 4});
      CHECK(values(d.value)[0] == doctest::Approx(h.derivative(s, n)).epsilon(1e-6).scale(1.0));
      CHECK(d.error >= 0.0);
    }
  }
  CHECK(space_of(scalar_element(0.0)) == line);
}

TEST_CASE("taylor_coeffs of an affine map") {
  const Map f = [](const Element& x) { return scalar_element(3.0 + 2.0 * values(x)[0]); };
  for (double radius : {0.01, 0.5, 4.0}) {
    const auto fit = taylor_coeffs(f, scalar_element(1.0), 3, radius);
    REQUIRE(fit.coeffs.size() == 4);
    CHECK(values(fit.coeffs[0])[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(values(fit.coeffs[1])[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(values(fit.coeffs[2])[0]) <= 1e-8);
    CHECK_FALSE(fit.ill_conditioned);
  }
  CHECK_THROWS_AS(taylor_coeffs(f, scalar_element(1.0), 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(taylor_coeffs(f, scalar_element(1.0), -1, 1.0), std::invalid_argument);
}

TEST_CASE("taylor_coeffs is independent of the fit radius for polynomials") {
  const Space dom{SpaceKind::grid, 6, 2, 0};
  const Jet jet = random_jet(3, dom, {SpaceKind::pvec, 2, 2, 0}, 2, 52);
  const Map f = [&jet](const Element& x) {
    Element out = eval(jet[0], x);
    for (int j = 1; j <= 3; ++j) out = lincomb(1.0, out, 1.0, eval(jet[static_cast<std::size_t>(j)], x));
    return out;
  };
  std::mt19937_64 rng(53);
  const Element v = random_element(dom, 1.0, rng);
  const auto a = taylor_coeffs(f, v, 3, 0.5);
  const auto b = taylor_coeffs(f, v, 3, 2.0);
  for (std::size_t n = 0; n <= 3; ++n) {
    CHECK(norm(lincomb(1.0, a.coeffs[n], -1.0, b.coeffs[n])) <= 1e-10);
  }
}

TEST_CASE("sup_probe") {
  const KMap k = pointwise_kmap(1.0 / 3.0, 0.5, kGrid);
  const Map km = [&k](const Element& x) { return k(x); };
  const Map id = [](const Element& x) { return x; };
  const Map zero = [](const Element& x) { return zero_element(space_of(x)); };
  const ProbeConfig cfg{1000, {1e-3, 1e3}, 54};
  CHECK(sup_probe(km, kGrid, cfg) <= 0.5);
  const double top = sup_probe(id, kGrid, cfg);
  CHECK(top <= 1e3 * (1.0 + 1e-12));
  CHECK(top >= 500.0);
  CHECK(sup_probe(zero, kGrid, cfg) == 0.0);
  CHECK(sup_probe(km, kGrid, cfg) == sup_probe(km, kGrid, cfg));
}

TEST_CASE("identity_radius_probe") {
  const ProbeConfig cfg{2000, {1e-3, 1e1}, 55};
  const KMap k = pointwise_kmap(1.0 / 3.0, 0.5, kGrid);
  const auto r = identity_radius_probe(k, cfg);
  CHECK_FALSE(r.violation);
  CHECK(r.probes == 2000);
  CHECK(r.radius >= 1.0 / 3.0);
  CHECK(r.radius <= 10.0);
  const auto rs = identity_radius_probe(rescale(k, 0.1), cfg);
  // probes are discrete, so the estimate sits just below the true radius
  CHECK(rs.radius >= 0.95 / 15.0);
  CHECK(rs.radius < 0.5);
  const auto rb = identity_radius_probe(bump_kmap(0.25, 0.5, {SpaceKind::pvec, 8, 2, 0}), cfg);
  CHECK_FALSE(rb.violation);
  CHECK(rb.radius >= 0.25);
  CHECK(rb.radius < 0.5);
  CHECK(identity_radius_probe(k, cfg).radius == r.radius);
}
