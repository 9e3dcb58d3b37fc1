#include "germext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "germext/scalar_smooth.hpp"

namespace germext {

namespace {

constexpr int kIntegralBoundOrder = ScalarSmoothFn::kDefaultOrder;

double sampled_sup_on_ball(const LocalMap& f, const Space& space, double radius,
                           std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Element x = random_element(space, radius * unit(rng), rng);
    if (!(norm(x) < f.domain_radius())) continue;
    best = std::max(best, norm(f(x)));
  }
  return best;
}

}  // namespace

LocalMap::LocalMap(double domain_radius, Map evaluator, Space codomain, BallBounds ball_bounds)
    : radius_(domain_radius),
      evaluator_(std::move(evaluator)),
      codomain_(codomain),
      ball_bounds_(std::move(ball_bounds)) {
  if (!(domain_radius > 0.0)) throw std::invalid_argument("LocalMap: domain radius must be positive");
  if (!evaluator_) throw std::invalid_argument("LocalMap: missing evaluator");
}

Element LocalMap::operator()(const Element& x) const {
  const double r = norm(x);
  if (!(r < radius_)) {
    throw OutsideDomain("local map evaluated at ||x|| = " + std::to_string(r) +
                        " outside its domain ball of radius " + std::to_string(radius_));
  }
  return evaluator_(x);
}

std::vector<double> LocalMap::ball_bounds(double r) const {
  if (!ball_bounds_) return {};
  return ball_bounds_(r);
}

GlobalMap extend_germ(const LocalMap& f, const KMap& k, const ExtendOptions& options) {
  const double eps = options.eps.value_or(0.9 * f.domain_radius());
  if (!(eps > 0.0) || !(eps < f.domain_radius())) {
    throw std::invalid_argument("extend_germ: eps must lie in (0, " +
                                std::to_string(f.domain_radius()) + "), got " + std::to_string(eps));
  }
  const KMap h1 = rescale(k, eps);

  GlobalMap out;
  out.evaluator = [f, h1](const Element& x) { return f(h1(x)); };
  out.agreement_radius = h1.identity_radius();
  if (f.has_ball_bounds()) {
    const auto fb = f.ball_bounds(eps);
    out.sup_bound = fb.empty() ? 0.0 : fb[0];
    out.sup_bound_certified = !fb.empty();
    if (k.bound_certified() && !fb.empty()) {
      const auto hb = h1.derivative_bounds();
      const std::size_t order = std::min(fb.size(), hb.size());
      for (std::size_t n = 0; n < order; ++n) {
        out.deriv_bounds.push_back(composite_derivative_majorant(fb, hb, static_cast<int>(n)));
      }
    }
  }
  if (!out.sup_bound_certified) {
    out.sup_bound = sampled_sup_on_ball(f, k.space(), eps, options.sup_samples, options.seed);
  }
  return out;
}

GlobalMap bump_extend(const LocalMap& f, const NormBump& delta, double u_radius) {
  if (!(u_radius < f.domain_radius())) {
    throw std::invalid_argument("bump_extend: U radius must be smaller than the domain radius");
  }
  if (delta.rho_out() > u_radius) {
    throw std::invalid_argument("bump_extend: bump support exceeds the U ball");
  }
  const Element zero = zero_element(f.codomain());
  GlobalMap out;
  out.evaluator = [f, delta, u_radius, zero](const Element& x) -> Element {
    const auto* v = std::get_if<PVector>(&x);
    if (v == nullptr) throw std::invalid_argument("bump_extend works on l_p spaces");
    if (!(p_norm(*v) < u_radius)) return zero;
    return scale(delta(*v), f(x));
  };
  out.agreement_radius = delta.rho_in();
  if (f.has_ball_bounds()) {
    const auto fb = f.ball_bounds(u_radius);
    out.sup_bound = fb.empty() ? 0.0 : fb[0];
    out.sup_bound_certified = !fb.empty();
  }
  return out;
}

double integral_functional(const GridFn& x) {
  if (!(sup_norm(x) < 1.0)) {
    throw OutsideDomain("integral functional needs sup |x| < 1, got " + std::to_string(sup_norm(x)));
  }
  return quadrature(pointwise_apply([](double s) { return 1.0 / (1.0 - s); }, x));
}

double integral_functional_global(const GridFn& x) {
  static const ScalarSmoothFn h = make_truncator(1.0 / 3.0, 0.5);
  return quadrature(pointwise_apply([](double s) { return 1.0 / (1.0 - h(s)); }, x));
}

LocalMap integral_local_map() {
  auto evaluator = [](const Element& x) -> Element {
    const auto* g = std::get_if<GridFn>(&x);
    if (g == nullptr) throw std::invalid_argument("integral functional is defined on grid spaces");
    return scalar_element(integral_functional(*g));
  };
  auto bounds = [](double r) {
    std::vector<double> out(kIntegralBoundOrder + 1);
    double factorial = 1.0;
    for (int k = 0; k <= kIntegralBoundOrder; ++k) {
      if (k > 0) factorial *= k;
      out[k] = factorial / std::pow(1.0 - r, k + 1);
    }
    return out;
  };
  return LocalMap(1.0, evaluator, space_of(scalar_element(0.0)), bounds);
}

}  // namespace germext
