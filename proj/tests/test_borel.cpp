#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "germext/borel.hpp"
#include "germext/kmaps.hpp"
#include "germext/verify.hpp"

using namespace germext;

namespace {

const Space kGrid{SpaceKind::grid, 8, 2, 0};
const Space kLp{SpaceKind::pvec, 8, 2, 0};
const Space kOut{SpaceKind::pvec, 2, 2, 0};

Jet zero_jet(int order, const Space& dom, const Space& cod) {
  std::vector<HomogeneousPoly> polys;
  for (int j = 0; j <= order; ++j) polys.emplace_back(j, dom, cod);
  return Jet(std::move(polys));
}

std::vector<Element> directions(const Space& sp, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Element> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_element(sp, 1.0, rng));
  return out;
}

}  // namespace

TEST_CASE("choose_epsilons") {
  const KMap k = pointwise_kmap(1.0 / 3.0, 0.5, kGrid);
  for (double e : choose_epsilons(zero_jet(4, kGrid, kOut), k, 1.0)) CHECK(e == 1.0);

  const Jet jet = random_jet(2, kGrid, kOut, 2, 31);
  const auto eps = choose_epsilons(jet, k, 1.0);
  REQUIRE(eps.size() == 3);
  CHECK(eps[0] == 1.0);
  for (std::size_t j = 1; j < eps.size(); ++j) {
    CHECK(eps[j] < eps[j - 1]);
    CHECK(eps[j] <= std::pow(2.0, -static_cast<double>(j)));
  }

  const Jet j4 = random_jet(4, kGrid, kOut, 3, 32);
  for (double budget : {1e-3, 1.0, 1e2, 1e5}) {
    const auto lo = choose_epsilons(j4, k, budget);
    const auto hi = choose_epsilons(j4, k, 2.0 * budget);
    for (std::size_t j = 0; j < lo.size(); ++j) {
      CHECK(hi[j] >= lo[j]);
      CHECK(lo[j] > 0.0);
      CHECK(lo[j] <= 1.0);
      if (j > 0) CHECK(lo[j] <= lo[j - 1]);
    }
  }
  CHECK_THROWS_AS(choose_epsilons(j4, k, 0.0), std::invalid_argument);
}

TEST_CASE("term derivative bounds scale as eps^(j - n)") {
  const KMap k = bump_kmap(0.25, 0.5, kLp);
  const Jet jet = random_jet(4, kLp, kOut, 2, 33);
  for (int j = 1; j <= 4; ++j) {
    const auto& p = jet[static_cast<std::size_t>(j)];
    CHECK(term_deriv_bound(p, k, 0.5, j) == doctest::Approx(term_deriv_bound(p, k, 0.01, j)).epsilon(1e-14));
    for (int n = 0; n < j; ++n) {
      const double full = term_deriv_bound(p, k, 0.5, n);
      const double half = term_deriv_bound(p, k, 0.25, n);
      CHECK(half == doctest::Approx(full * std::pow(0.5, j - n)).epsilon(1e-13));
      CHECK(term_constant(p, k, n) >= 0.0);
      // sampled derivatives stay below the certified bound
      CHECK(sample_term_deriv_sup(p, k, 0.5, n, 200, 34) <= full * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("constant jet and the value at zero") {
  const KMap k = pointwise_kmap(1.0 / 3.0, 0.5, kGrid);
  const Element y0 = PVector({1.5, -2.0});
  const std::vector<double> phi(8, 0.0);
  std::vector<HomogeneousPoly> polys;
  polys.emplace_back(0, kGrid, kOut, std::vector<RankOneTerm>{{1.0, phi, y0}});
  const BorelSeries c = make_borel_series(Jet(std::move(polys)), k);
  std::mt19937_64 rng(35);
  for (double r : {0.0, 0.1, 10.0, 1e6}) CHECK(identical(c(random_element(kGrid, r, rng)), y0));

  const Jet jet = random_jet(4, kGrid, kOut, 2, 36);
  const BorelSeries s = make_borel_series(jet, k);
  const Element at0 = s(zero_element(kGrid));
  CHECK(norm(lincomb(1.0, at0, -1.0, eval(jet[0], zero_element(kGrid)))) <= 1e-15);
}

TEST_CASE("series equals the Taylor polynomial on the identity ball") {
  for (const Space& sp : {kGrid, kLp}) {
    const KMap k = sp.kind == SpaceKind::grid ? pointwise_kmap(1.0 / 3.0, 0.5, sp) : bump_kmap(0.25, 0.5, sp);
    const Jet jet = random_jet(4, sp, kOut, 2, 37);
    const BorelSeries s = make_borel_series(jet, k, 1.0);
    const double r = s.identity_radius();
    CHECK(r > 0.0);
    std::mt19937_64 rng(38);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const Element x = random_element(sp, r * u(rng), rng);
      Element taylor = zero_element(kOut);
      double fact = 1.0;
      for (int j = 0; j <= 4; ++j) {
        if (j > 0) fact *= j;
        taylor = lincomb(1.0, taylor, 1.0 / fact, eval(jet[static_cast<std::size_t>(j)], x));
      }
      const Element got = s(x);
      CHECK(norm(lincomb(1.0, got, -1.0, taylor)) <= 1e-12 * std::max(1.0, norm(taylor)));
      const auto parts = s.terms(x);
      REQUIRE(parts.size() == 5);
    }
  }
}

TEST_CASE("verify_jet recovers the jet") {
  const KMap k = bump_kmap(0.25, 0.5, kLp);
  const auto dirs = directions(kLp, 20, 39);

  const Jet jet = random_jet(4, kLp, kOut, 2, 40);
  const JetReport rep = verify_jet(make_borel_series(jet, k), dirs, 1e-6);
  CHECK(rep.pass);
  CHECK(rep.max_rel_error <= 1e-6);
  CHECK(rep.residuals.size() == 20 * 5);

  std::vector<HomogeneousPoly> linear{HomogeneousPoly(0, kLp, kOut), jet[1]};
  const JetReport lin = verify_jet(make_borel_series(Jet(linear), k), dirs, 1e-9);
  CHECK(lin.pass);

  // the residual is homogeneous: scaling a direction gives the same relative error scale
  std::vector<Element> scaled;
  for (const auto& d : dirs) scaled.push_back(scale(3.0, d));
  const JetReport rs = verify_jet(make_borel_series(jet, k), scaled, 1e-6);
  CHECK(rs.pass);

  const std::vector<Element> bad{zero_element(kLp)};
  CHECK_THROWS_AS(verify_jet(make_borel_series(jet, k), bad, 1e-6), std::invalid_argument);
}

TEST_CASE("first derivative at zero matches P_1 by finite differences") {
  const KMap k = bump_kmap(0.25, 0.5, kLp);
  const Jet jet = random_jet(3, kLp, kOut, 2, 41);
  const BorelSeries s = make_borel_series(jet, k, 1.0);
  const Map f = [&s](const Element& x) { return s(x); };
  for (const auto& v : directions(kLp, 10, 42)) {
    const auto d = directional_deriv(f, zero_element(kLp), v, 1, {s.identity_radius() / 4, 4});
    const Element want = eval(jet[1], v);
    CHECK(norm(lincomb(1.0, d.value, -1.0, want)) <= 1e-8 * std::max(1.0, norm(want)));
  }
}

TEST_CASE("global sup bounds") {
  const KMap k = bump_kmap(0.25, 0.5, kLp);
  const Jet jet = random_jet(4, kLp, kOut, 2, 43);
  const BorelSeries s = make_borel_series(jet, k, 1.0);
  CHECK(s.sup_bound() <= s.sup_bound_unscaled());
  const Map f = [&s](const Element& x) { return s(x); };
  CHECK(sup_probe(f, kLp, {5000, {1e-6, 1e6}, 44}) <= s.sup_bound());
}

TEST_CASE("jet and series validation") {
  const Space other{SpaceKind::pvec, 3, 2, 0};
  CHECK_THROWS_AS(Jet({}), std::invalid_argument);
  CHECK_THROWS_AS(Jet({HomogeneousPoly(1, kLp, kOut)}), std::invalid_argument);
  CHECK_THROWS_AS(Jet({HomogeneousPoly(0, kLp, kOut), HomogeneousPoly(1, kLp, other)}), std::invalid_argument);
  const Jet jet = random_jet(2, kLp, kOut, 1, 45);
  const KMap k = bump_kmap(0.25, 0.5, kLp);
  CHECK_THROWS_AS(BorelSeries(jet, k, {1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(BorelSeries(jet, k, {1.0, 0.5, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(BorelSeries(jet, k, {1.0, 1.5, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(BorelSeries(jet, pointwise_kmap(1.0 / 3.0, 0.5, kGrid), {1.0, 0.5, 0.25}), std::invalid_argument);
}
