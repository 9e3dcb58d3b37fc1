#include "germext/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "germext/chebyshev.hpp"

namespace germext {

namespace {

struct Stencil {
  std::vector<std::pair<int, double>> taps;  // (offset in steps, weight)
};

const Stencil& stencil(int n) {
  static const std::array<Stencil, kMaxFDOrder + 1> table{{
      {{{0, 1.0}}},
      {{{1, 0.5}, {-1, -0.5}}},
      {{{1, 1.0}, {0, -2.0}, {-1, 1.0}}},
      {{{2, 0.5}, {1, -1.0}, {-1, 1.0}, {-2, -0.5}}},
      {{{2, 1.0}, {1, -4.0}, {0, 6.0}, {-1, -4.0}, {-2, 1.0}}},
  }};
  return table[static_cast<std::size_t>(n)];
}

std::vector<double> difference_quotient(const Map& f, const Element& x, const Element& v, int n,
                                        double h) {
  std::vector<double> acc;
  for (const auto& [offset, weight] : stencil(n).taps) {
    const Element y = f(offset == 0 ? x : lincomb(1.0, x, offset * h, v));
    const auto yv = values(y);
    if (acc.empty()) acc.assign(yv.size(), 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * yv[i];
  }
  const double scale = std::pow(h, n);
  for (double& a : acc) a /= scale;
  return acc;
}

}  // namespace

DirectionalDerivative directional_deriv(const Map& f, const Element& x, const Element& v, int n,
                                        const FDConfig& cfg) {
  if (n < 0 || n > kMaxFDOrder) throw std::invalid_argument("FD derivative order must be in [0, 4]");
  if (!(cfg.base_step > 0.0) || cfg.levels < 1) throw std::invalid_argument("bad FDConfig");
  const Element probe = f(x);
  if (n == 0) return {probe, 0.0};

  const auto levels = static_cast<std::size_t>(cfg.levels);
  std::vector<std::vector<std::vector<double>>> table(levels);
  double h = cfg.base_step;
  for (std::size_t i = 0; i < levels; ++i, h *= 0.5) {
    table[i].push_back(difference_quotient(f, x, v, n, h));
    double factor = 4.0;
    for (std::size_t k = 1; k <= i; ++k, factor *= 4.0) {
      const auto& fine = table[i][k - 1];
      const auto& coarse = table[i - 1][k - 1];
      std::vector<double> next(fine.size());
      for (std::size_t c = 0; c < next.size(); ++c) {
        next[c] = fine[c] + (fine[c] - coarse[c]) / (factor - 1.0);
      }
      table[i].push_back(std::move(next));
    }
  }
  const auto& best = table[levels - 1][levels - 1];
  double err = 0.0;
  if (levels > 1) {
    const auto& prev = table[levels - 2][levels - 2];
    for (std::size_t c = 0; c < best.size(); ++c) err = std::max(err, std::abs(best[c] - prev[c]));
  }
  return {with_values(probe, best), err};
}

TaylorFit taylor_coeffs(const Map& f, const Element& v, int degree, double radius,
                        std::size_t nodes, double residual_tol) {
  if (degree < 0) throw std::invalid_argument("taylor_coeffs: degree must be nonnegative");
  if (!(radius > 0.0)) throw std::invalid_argument("taylor_coeffs: radius must be positive");
  const auto J = static_cast<std::size_t>(degree);
  nodes = std::max(nodes, 2 * (J + 1));
  const auto xi = chebyshev::gauss_nodes(nodes);

  std::vector<Element> samples;
  samples.reserve(nodes);
  for (double u : xi) samples.push_back(f(scale(radius * u, v)));
  const std::size_t width = values(samples.front()).size();

  std::vector<std::vector<double>> per_order(J + 1, std::vector<double>(width, 0.0));
  double residual = 0.0;
  double magnitude = 0.0;
  std::vector<double> column(nodes);
  for (std::size_t c = 0; c < width; ++c) {
    for (std::size_t m = 0; m < nodes; ++m) {
      column[m] = values(samples[m])[c];
      magnitude = std::max(magnitude, std::abs(column[m]));
    }
    const auto cheb = chebyshev::fit_gauss(column, J);
    for (std::size_t m = 0; m < nodes; ++m) {
      residual = std::max(residual, std::abs(chebyshev::clenshaw(cheb, xi[m]) - column[m]));
    }
    const auto mono = chebyshev::to_monomial(cheb);
    double rpow = 1.0;
    for (std::size_t n = 0; n <= J; ++n, rpow *= radius) per_order[n][c] = mono[n] / rpow;
  }

  TaylorFit fit{{}, residual, residual > residual_tol * std::max(1.0, magnitude)};
  fit.coeffs.reserve(J + 1);
  for (auto& coeffs : per_order) fit.coeffs.push_back(with_values(samples.front(), std::move(coeffs)));
  return fit;
}

Element sample_probe(const Space& space, const ProbeConfig& cfg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> logn(std::log(cfg.norm_range.first),
                                              std::log(cfg.norm_range.second));
  return random_element(space, std::exp(logn(rng)), rng);
}

double sup_probe(const Map& f, const Space& domain, const ProbeConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  double best = 0.0;
  for (std::size_t i = 0; i < cfg.trials; ++i) best = std::max(best, norm(f(sample_probe(domain, cfg, rng))));
  return best;
}

bool identical(const Element& x, const Element& y) {
  if (!(space_of(x) == space_of(y))) return false;
  const auto a = values(x);
  const auto b = values(y);
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

IdentityRadiusReport identity_radius_probe(const KMap& k, const ProbeConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<double, bool>> results;
  results.reserve(cfg.trials);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    const Element x = sample_probe(k.space(), cfg, rng);
    results.emplace_back(norm(x), identical(k(x), x));
  }
  std::sort(results.begin(), results.end());
  IdentityRadiusReport report{0.0, false, results.size()};
  bool prefix = true;
  for (const auto& [r, ok] : results) {
    if (!ok && r <= k.identity_radius()) report.violation = true;
    if (!ok) prefix = false;
    if (prefix) report.radius = r;
  }
  return report;
}

}  // namespace germext
