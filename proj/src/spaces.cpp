#include "germext/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "germext/chebyshev.hpp"

namespace germext {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

// |x|^p for even p without std::pow rounding surprises on small p.
double even_power(double x, int p) {
  double r = 1.0;
  const double sq = x * x;
  for (int i = 0; i < p / 2; ++i) r *= sq;
  return r;
}

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::grid:
      return "grid";
    case SpaceKind::cheb:
      return "cheb";
    case SpaceKind::pvec:
      return "pvec";
  }
  return "grid";
}

SpaceKind space_kind_from_string(const std::string& name) {
  if (name == "grid") return SpaceKind::grid;
  if (name == "cheb") return SpaceKind::cheb;
  if (name == "pvec") return SpaceKind::pvec;
  throw std::invalid_argument("unknown space kind '" + name + "'");
}

GridFn::GridFn(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw std::invalid_argument("GridFn needs at least 2 samples");
  require_finite(samples_, "GridFn");
}

ChebFn::ChebFn(std::vector<double> coeffs, int smoothness)
    : coeffs_(std::move(coeffs)), smoothness_(smoothness) {
  if (coeffs_.empty()) throw std::invalid_argument("ChebFn needs at least one coefficient");
  if (smoothness_ < 0) throw std::invalid_argument("ChebFn smoothness must be nonnegative");
  require_finite(coeffs_, "ChebFn");
}

ChebFn ChebFn::from_function(const std::function<double(double)>& f, std::size_t degree,
                             int smoothness) {
  const auto nodes = chebyshev::gauss_nodes(degree + 1);
  std::vector<double> vals(nodes.size());
  for (std::size_t m = 0; m < nodes.size(); ++m) vals[m] = f(0.5 * (1.0 + nodes[m]));
  return ChebFn(chebyshev::fit_gauss(vals, degree), smoothness);
}

double ChebFn::operator()(double t) const { return chebyshev::clenshaw(coeffs_, 2.0 * t - 1.0); }

ChebFn ChebFn::derivative() const {
  auto d = chebyshev::differentiate(coeffs_);
  for (double& c : d) c *= 2.0;  // dxi/dt
  return ChebFn(std::move(d), smoothness_ > 0 ? smoothness_ - 1 : 0);
}

PVector::PVector(std::vector<double> entries, int p) : entries_(std::move(entries)), p_(p) {
  if (entries_.empty()) throw std::invalid_argument("PVector needs at least one entry");
  if (p_ <= 0 || p_ % 2 != 0) {
    throw std::invalid_argument("PVector exponent must be a positive even integer, got " +
                                std::to_string(p_));
  }
  require_finite(entries_, "PVector");
}

double sup_norm(const GridFn& x) {
  double m = 0.0;
  for (double v : x.samples()) m = std::max(m, std::abs(v));
  return m;
}

double p_norm(const PVector& x) {
  double m = 0.0;
  for (double v : x.entries()) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : x.entries()) acc += even_power(v / m, x.p());
  return m * std::pow(acc, 1.0 / x.p());
}

double cn_norm(const ChebFn& x, std::size_t samples) {
  if (samples == 0) samples = std::max<std::size_t>(257, 8 * (x.degree() + 1) + 1);
  double best = 0.0;
  std::vector<double> coeffs(x.coeffs().begin(), x.coeffs().end());
  for (int k = 0; k <= x.smoothness(); ++k) {
    for (std::size_t i = 0; i < samples; ++i) {
      const double xi = 2.0 * GridFn::grid_point(i, samples) - 1.0;
      best = std::max(best, std::abs(chebyshev::clenshaw(coeffs, xi)));
    }
    if (k < x.smoothness()) {
      coeffs = chebyshev::differentiate(coeffs);
      for (double& c : coeffs) c *= 2.0;
    }
  }
  return best;
}

double norm(const Element& x) {
  return std::visit(overloaded{[](const GridFn& g) { return sup_norm(g); },
                               [](const ChebFn& c) { return cn_norm(c); },
                               [](const PVector& v) { return p_norm(v); }},
                    x);
}

Space space_of(const Element& x) {
  return std::visit(
      overloaded{[](const GridFn& g) { return Space{SpaceKind::grid, g.size(), 2, 0}; },
                 [](const ChebFn& c) {
                   return Space{SpaceKind::cheb, c.degree() + 1, 2, c.smoothness()};
                 },
                 [](const PVector& v) { return Space{SpaceKind::pvec, v.size(), v.p(), 0}; }},
      x);
}

std::span<const double> values(const Element& x) {
  return std::visit(overloaded{[](const GridFn& g) { return g.samples(); },
                               [](const ChebFn& c) { return c.coeffs(); },
                               [](const PVector& v) { return v.entries(); }},
                    x);
}

Element with_values(const Element& like, std::vector<double> data) {
  return std::visit(
      overloaded{[&](const GridFn&) -> Element { return GridFn(std::move(data)); },
                 [&](const ChebFn& c) -> Element { return ChebFn(std::move(data), c.smoothness()); },
                 [&](const PVector& v) -> Element { return PVector(std::move(data), v.p()); }},
      like);
}

Element zero_element(const Space& space) {
  std::vector<double> data(space.dim, 0.0);
  switch (space.kind) {
    case SpaceKind::grid:
      return GridFn(std::move(data));
    case SpaceKind::cheb:
      return ChebFn(std::move(data), space.smoothness);
    case SpaceKind::pvec:
      return PVector(std::move(data), space.p);
  }
  throw std::invalid_argument("zero_element: bad space");
}

Element scalar_element(double value) { return PVector({value}, 2); }

Element lincomb(double a, const Element& x, double b, const Element& y) {
  if (!(space_of(x) == space_of(y))) {
    throw std::invalid_argument("lincomb: elements live in different spaces");
  }
  const auto xv = values(x);
  const auto yv = values(y);
  std::vector<double> out(xv.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * xv[i] + b * yv[i];
  return with_values(x, std::move(out));
}

Element scale(double a, const Element& x) {
  const auto xv = values(x);
  std::vector<double> out(xv.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * xv[i];
  return with_values(x, std::move(out));
}

ComposeResult cheb_compose(const std::function<double(double)>& g, const ChebFn& x) {
  const std::size_t degree = x.degree();
  const std::size_t count = 4 * (degree + 1);
  const auto nodes = chebyshev::gauss_nodes(count);
  std::vector<double> sampled(count);
  for (std::size_t m = 0; m < count; ++m) sampled[m] = g(chebyshev::clenshaw(x.coeffs(), nodes[m]));
  auto coeffs = chebyshev::fit_gauss(sampled, degree);
  double aliasing = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    aliasing = std::max(aliasing, std::abs(chebyshev::clenshaw(coeffs, nodes[m]) - sampled[m]));
  }
  return {ChebFn(std::move(coeffs), x.smoothness()), aliasing};
}

double quadrature(const GridFn& x) {
  const std::size_t d = x.size();
  if (d % 2 == 0) {
    throw std::invalid_argument("composite Simpson needs an odd number of grid points, got " +
                                std::to_string(d));
  }
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < d; ++i) (i % 2 == 1 ? odd : even) += x[i];
  const double h = 1.0 / static_cast<double>(d - 1);
  return h / 3.0 * (x[0] + 4.0 * odd + 2.0 * even + x[d - 1]);
}

Element random_element(const Space& space, double target_norm, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> data(space.dim);
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = unit(rng);
    if (space.kind == SpaceKind::cheb) data[i] /= static_cast<double>((i + 1) * (i + 1));
  }
  Element raw = with_values(zero_element(space), std::move(data));
  const double n = norm(raw);
  if (n == 0.0) return raw;
  return scale(target_norm / n, raw);
}

}  // namespace germext
