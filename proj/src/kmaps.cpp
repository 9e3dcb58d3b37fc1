#include "germext/kmaps.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace germext {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double even_power(double x, int p) {
  double r = 1.0;
  const double sq = x * x;
  for (int i = 0; i < p / 2; ++i) r *= sq;
  return r;
}

}  // namespace

std::vector<std::vector<double>> bell_table(std::span<const double> x, int max_n) {
  std::vector<std::vector<double>> b(static_cast<std::size_t>(max_n) + 1);
  for (int n = 0; n <= max_n; ++n) b[n].assign(static_cast<std::size_t>(n) + 1, 0.0);
  b[0][0] = 1.0;
  auto xm = [&](int m) { return m < static_cast<int>(x.size()) ? x[m] : 0.0; };
  for (int n = 1; n <= max_n; ++n) {
    for (int k = 1; k <= n; ++k) {
      double acc = 0.0;
      for (int i = 1; i <= n - k + 1; ++i) {
        if (k - 1 > n - i) continue;
        acc += binomial(n - 1, i - 1) * xm(i) * b[n - i][k - 1];
      }
      b[n][k] = acc;
    }
  }
  return b;
}

double composite_derivative_majorant(std::span<const double> outer, std::span<const double> inner,
                                     int n) {
  if (n == 0) return outer.empty() ? 0.0 : outer[0];
  const auto bell = bell_table(inner, n);
  double acc = 0.0;
  for (int k = 1; k <= n && k < static_cast<int>(outer.size()); ++k) acc += outer[k] * bell[n][k];
  return acc;
}

NormBump::NormBump(double rho_in, double rho_out, int p)
    : rho_in_(rho_in),
      rho_out_(rho_out),
      p_(p),
      profile_(make_bump(even_power(rho_in, p), even_power(rho_out, p))) {
  if (p <= 0 || p % 2 != 0) {
    throw std::invalid_argument("norm bump needs an even exponent p, got " + std::to_string(p));
  }
  if (!(rho_in > 0.0) || !(rho_in < rho_out)) {
    throw std::invalid_argument("norm bump needs 0 < rho_in < rho_out");
  }
}

double NormBump::power_sum(const PVector& x, double scale) const {
  double acc = 0.0;
  for (double v : x.entries()) acc += even_power(scale * v, p_);
  return acc;
}

std::vector<double> NormBump::derivative_bounds() const {
  const int order = profile_.max_deriv_order();
  // Directional derivatives of N(x) = sum x_i^p on ||x|| <= rho_out (Hoelder).
  std::vector<double> inner(static_cast<std::size_t>(order) + 1, 0.0);
  for (int m = 1; m <= order; ++m) {
    if (m > p_) break;
    double ff = 1.0;
    for (int i = 0; i < m; ++i) ff *= p_ - i;
    inner[m] = ff * std::pow(rho_out_, p_ - m);
  }
  std::vector<double> outer(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) outer[k] = profile_.derivative_sup(k);
  std::vector<double> out(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) out[n] = composite_derivative_majorant(outer, inner, n);
  return out;
}

KMap::KMap(KMapKind kind, const Space& space, double inner, double outer, ScalarSmoothFn cutoff,
           double identity_radius, double bound, std::vector<double> deriv_bounds, bool certified)
    : kind_(kind),
      space_(space),
      inner_(inner),
      outer_(outer),
      cutoff_(std::move(cutoff)),
      base_identity_radius_(identity_radius),
      base_bound_(bound),
      base_deriv_bounds_(std::move(deriv_bounds)),
      certified_(certified) {}

KMap KMap::pointwise(double a, double b, const Space& space) {
  if (space.kind == SpaceKind::pvec) {
    throw std::invalid_argument("pointwise K-map needs a grid or cheb space");
  }
  if (space.dim < 1) throw std::invalid_argument("pointwise K-map: empty space");
  auto psi = make_bump(a, b);
  const auto h = make_truncator(a, b);
  std::vector<double> bounds(static_cast<std::size_t>(h.max_deriv_order()) + 1);
  bounds[0] = b;
  for (int m = 1; m <= h.max_deriv_order(); ++m) bounds[m] = h.derivative_sup(m);
  return KMap(KMapKind::pointwise, space, a, b, std::move(psi), a, b, std::move(bounds),
              space.kind == SpaceKind::grid);
}

KMap KMap::bump(double rho_in, double rho_out, const Space& space) {
  if (space.kind != SpaceKind::pvec) throw std::invalid_argument("bump K-map needs an l_p space");
  const NormBump delta(rho_in, rho_out, space.p);
  const auto tau = delta.derivative_bounds();
  std::vector<double> bounds(tau.size());
  bounds[0] = rho_out;
  for (std::size_t n = 1; n < tau.size(); ++n) {
    bounds[n] = rho_out * tau[n] + static_cast<double>(n) * tau[n - 1];
  }
  return KMap(KMapKind::bump, space, rho_in, rho_out, delta.profile(), rho_in, rho_out,
              std::move(bounds), true);
}

std::vector<double> KMap::multiplier(const Element& x) const {
  const double lambda = input_scale_;
  if (const auto* g = std::get_if<GridFn>(&x)) {
    std::vector<double> m(g->size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = cutoff_(lambda * (*g)[i]);
    return m;
  }
  if (const auto* v = std::get_if<PVector>(&x)) {
    double acc = 0.0;
    for (double e : v->entries()) acc += even_power(lambda * e, v->p());
    return std::vector<double>(v->size(), cutoff_(acc));
  }
  throw std::invalid_argument("K-map multiplier is defined on grid and pvec spaces only");
}

Element KMap::operator()(const Element& x) const {
  const Space s = space_of(x);
  if (s.kind != space_.kind || s.dim != space_.dim || (s.kind == SpaceKind::pvec && s.p != space_.p)) {
    throw std::invalid_argument("K-map applied to an element of the wrong space");
  }
  if (const auto* c = std::get_if<ChebFn>(&x)) {
    return cheb_compose([this](double t) { return pointwise_value(t); }, *c).value;
  }
  const auto m = multiplier(x);
  const auto xv = values(x);
  std::vector<double> out(xv.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = m[i] * xv[i];
  return with_values(x, std::move(out));
}

double KMap::pointwise_value(double s) const {
  if (kind_ != KMapKind::pointwise) throw std::logic_error("pointwise_value: not a pointwise K-map");
  return cutoff_(input_scale_ * s) * s;
}

double KMap::derivative_bound(int m) const {
  if (m < 0 || m >= static_cast<int>(base_deriv_bounds_.size())) {
    throw std::out_of_range("K-map derivative order out of range");
  }
  return base_deriv_bounds_[m] * std::pow(input_scale_, m - 1);
}

std::vector<double> KMap::derivative_bounds() const {
  std::vector<double> out(base_deriv_bounds_.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = derivative_bound(static_cast<int>(m));
  return out;
}

KMap pointwise_kmap(double a, double b, const Space& space) { return KMap::pointwise(a, b, space); }

KMap bump_kmap(double rho_in, double rho_out, const Space& space) {
  return KMap::bump(rho_in, rho_out, space);
}

KMap rescale(const KMap& k, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("rescale: eps must be > 0");
  KMap out = k;
  out.input_scale_ = k.input_scale_ * (k.bound() / eps);
  out.rescalings_.push_back(eps);
  return out;
}

KMap dilate(const KMap& k, double eps) { return rescale(k, eps * k.bound()); }

BallKMap::BallKMap(KMap base, Element center, double radius, double margin)
    : base_(std::move(base)), center_(std::move(center)), radius_(radius), margin_(margin) {
  if (!(margin > 0.0)) throw std::invalid_argument("kmap_at_ball: margin must be positive");
  if (!(radius >= 0.0)) throw std::invalid_argument("kmap_at_ball: radius must be nonnegative");
  c_ = base_.identity_radius() / (radius_ + 0.5 * margin_);
}

Element BallKMap::operator()(const Element& x) const {
  const Element shifted = lincomb(1.0, x, -1.0, center_);
  if (std::holds_alternative<ChebFn>(x)) {
    return lincomb(1.0, center_, 1.0 / c_, base_(scale(c_, shifted)));
  }
  // z + m (.) (x - z), written as x + (m - 1)(x - z) so m == 1 returns x itself.
  const auto m = base_.multiplier(scale(c_, shifted));
  const auto xv = values(x);
  const auto dv = values(shifted);
  std::vector<double> out(xv.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = xv[i] + (m[i] - 1.0) * dv[i];
  return with_values(x, std::move(out));
}

BallKMap kmap_at_ball(const KMap& k, const Element& z, double r, double margin) {
  return BallKMap(k, z, r, margin);
}

Subspace vanishing_at(std::size_t index) {
  Subspace s;
  s.name = "vanishing_at_" + std::to_string(index);
  s.contains = [index](const Element& x) {
    const auto v = values(x);
    return index < v.size() && v[index] == 0.0;
  };
  s.project = [index](const Element& x) {
    auto v = values(x);
    std::vector<double> data(v.begin(), v.end());
    if (index < data.size()) data[index] = 0.0;
    return with_values(x, std::move(data));
  };
  return s;
}

std::size_t count_closure_violations(const KMap& k, const Subspace& sub, std::size_t trials,
                                     double norm_lo, double norm_hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logn(std::log(norm_lo), std::log(norm_hi));
  std::size_t violations = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const Element x = sub.project(random_element(k.space(), std::exp(logn(rng)), rng));
    if (!sub.contains(x)) continue;
    if (!sub.contains(k(x))) ++violations;
  }
  return violations;
}

std::vector<C1ProbeRow> c1_growth_probe(const KMap& k, std::span<const double> frequencies,
                                        double amplitude) {
  if (k.space().kind != SpaceKind::cheb || k.kind() != KMapKind::pointwise) {
    throw std::invalid_argument("C^1 probe needs a pointwise K-map on a cheb space");
  }
  const std::size_t degree = k.space().dim - 1;
  const int n = std::max(1, k.space().smoothness);
  std::vector<C1ProbeRow> rows;
  for (double freq : frequencies) {
    const ChebFn x = ChebFn::from_function(
        [amplitude, freq](double t) { return amplitude * std::sin(freq * t); }, degree, n);
    const auto composed = cheb_compose([&k](double s) { return k.pointwise_value(s); }, x);
    double sup = 0.0;
    for (std::size_t i = 0; i < 1025; ++i) {
      sup = std::max(sup, std::abs(composed.value(GridFn::grid_point(i, 1025))));
    }
    rows.push_back({freq, cn_norm(x), cn_norm(composed.value), sup, composed.aliasing_error});
  }
  return rows;
}

}  // namespace germext
