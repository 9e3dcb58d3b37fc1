#include "germext/borel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace germext {

Jet::Jet(std::vector<HomogeneousPoly> polys) : polys_(std::move(polys)) {
  if (polys_.empty()) throw std::invalid_argument("jet needs at least P_0");
  for (std::size_t j = 0; j < polys_.size(); ++j) {
    if (polys_[j].degree() != static_cast<int>(j)) {
      throw std::invalid_argument("jet entry " + std::to_string(j) + " has degree " +
                                  std::to_string(polys_[j].degree()));
    }
    if (!(polys_[j].domain() == polys_[0].domain()) ||
        !(polys_[j].codomain() == polys_[0].codomain())) {
      throw std::invalid_argument("jet polynomials must share domain and codomain");
    }
  }
}

double term_constant(const HomogeneousPoly& poly, const KMap& k, int n) {
  if (n < 0 || n > k.deriv_order()) {
    throw std::out_of_range("term_constant: order " + std::to_string(n) +
                            " exceeds the K-map's derivative bounds");
  }
  const int j = poly.degree();
  const double cj = norm_bound(poly);
  const double big_n = k.bound();
  std::vector<double> outer(static_cast<std::size_t>(n) + 1, 0.0);
  for (int m = 0; m <= std::min(n, j); ++m) {
    outer[m] = falling_factorial(j, m) * cj * std::pow(big_n, j - m);
  }
  return composite_derivative_majorant(outer, k.derivative_bounds(), n);
}

double term_deriv_bound(const HomogeneousPoly& poly, const KMap& k, double eps, int n) {
  return std::pow(eps, poly.degree() - n) * term_constant(poly, k, n);
}

std::vector<double> choose_epsilons(const Jet& jet, const KMap& k, double budget) {
  if (!(budget > 0.0)) throw std::invalid_argument("choose_epsilons: budget must be positive");
  std::vector<double> eps;
  double previous = 1.0;
  for (int j = 0; j <= jet.order(); ++j) {
    double chat = 0.0;
    for (int n = 0; n < j; ++n) chat = std::max(chat, term_constant(jet[j], k, n));
    double e = previous;
    if (chat > 0.0) e = std::min(e, std::ldexp(budget, -j) / (1.0 + chat));
    eps.push_back(e);
    previous = e;
  }
  return eps;
}

BorelSeries::BorelSeries(Jet jet, KMap base, std::vector<double> epsilons)
    : jet_(std::move(jet)), base_(std::move(base)), epsilons_(std::move(epsilons)) {
  if (epsilons_.size() != jet_.polys().size()) {
    throw std::invalid_argument("BorelSeries: one epsilon per jet entry required");
  }
  if (!(jet_.domain().kind == base_.space().kind && jet_.domain().dim == base_.space().dim)) {
    throw std::invalid_argument("BorelSeries: jet domain and K-map space differ");
  }
  for (std::size_t j = 0; j < epsilons_.size(); ++j) {
    if (!(epsilons_[j] > 0.0) || epsilons_[j] > 1.0 || (j > 0 && epsilons_[j] > epsilons_[j - 1])) {
      throw std::invalid_argument("BorelSeries: epsilons must lie in (0, 1] and be nonincreasing");
    }
    scaled_.push_back(dilate(base_, epsilons_[j]));
  }
}

std::vector<Element> BorelSeries::terms(const Element& x) const {
  std::vector<Element> out;
  out.reserve(scaled_.size());
  double factorial = 1.0;
  for (std::size_t j = 0; j < scaled_.size(); ++j) {
    if (j > 0) factorial *= static_cast<double>(j);
    if (jet_[j].terms().empty()) {
      out.push_back(zero_element(jet_.codomain()));
      continue;
    }
    const Element term = j == 0 ? jet_[0](x) : jet_[j](scaled_[j](x));
    out.push_back(scale(1.0 / factorial, term));
  }
  return out;
}

Element BorelSeries::operator()(const Element& x) const {
  std::vector<double> acc(jet_.codomain().dim, 0.0);
  for (const auto& term : terms(x)) {
    const auto tv = values(term);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += tv[i];
  }
  return with_values(zero_element(jet_.codomain()), std::move(acc));
}

double BorelSeries::identity_radius() const {
  double r = base_.identity_radius();
  for (std::size_t j = 1; j < scaled_.size(); ++j) r = std::min(r, scaled_[j].identity_radius());
  return r;
}

double BorelSeries::sup_bound() const {
  double acc = 0.0;
  double factorial = 1.0;
  for (std::size_t j = 0; j < scaled_.size(); ++j) {
    if (j > 0) factorial *= static_cast<double>(j);
    acc += norm_bound(jet_[j]) * std::pow(scaled_[j].bound(), static_cast<double>(j)) / factorial;
  }
  return acc;
}

double BorelSeries::sup_bound_unscaled() const {
  double acc = 0.0;
  double factorial = 1.0;
  for (std::size_t j = 0; j < epsilons_.size(); ++j) {
    if (j > 0) factorial *= static_cast<double>(j);
    acc += norm_bound(jet_[j]) * std::pow(epsilons_[j], static_cast<double>(j)) / factorial;
  }
  return acc;
}

BorelSeries make_borel_series(const Jet& jet, const KMap& k, double budget) {
  return BorelSeries(jet, k, choose_epsilons(jet, k, budget));
}

Element eval_series(const BorelSeries& series, const Element& x) { return series(x); }

namespace {

double jet_error(const HomogeneousPoly& poly, const Element& v, const Element& coeff, double factorial) {
  const Element diff = lincomb(factorial, coeff, -1.0, eval(poly, v));
  const double magnitude = norm_bound(poly) * std::pow(norm(v), poly.degree());
  return magnitude > 0.0 ? norm(diff) / magnitude : norm(diff);
}

}  // namespace

JetReport verify_jet(const BorelSeries& series, std::span<const Element> directions, double tol) {
  JetReport report;
  const int order = series.truncation();
  const Map f = [&series](const Element& x) { return series(x); };
  for (std::size_t d = 0; d < directions.size(); ++d) {
    const Element& v = directions[d];
    const double vn = norm(v);
    if (!(vn > 0.0)) throw std::invalid_argument("verify_jet: zero direction");
    const double radius = series.identity_radius() / vn;
    const auto fit = taylor_coeffs(f, v, order, radius);

    double factorial = 1.0;
    for (int n = 0; n <= order; ++n) {
      if (n > 0) factorial *= static_cast<double>(n);
      const double err = jet_error(series.jet()[n], v, fit.coeffs[n], factorial);
      const bool ok = err <= tol;
      report.residuals.push_back({n, d, err, radius, ok});
      report.max_rel_error = std::max(report.max_rel_error, err);
      report.pass = report.pass && ok;
    }
  }
  return report;
}

Jet random_jet(int order, const Space& domain, const Space& codomain, std::size_t terms,
               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<HomogeneousPoly> polys;
  for (int j = 0; j <= order; ++j) {
    std::vector<RankOneTerm> list;
    for (std::size_t t = 0; t < terms; ++t) {
      std::vector<double> phi(domain.dim);
      for (double& p : phi) p = unit(rng);
      const double dn = dual_norm(phi, domain);
      for (double& p : phi) p /= dn;
      const double c = unit(rng);
      list.push_back({c, std::move(phi), random_element(codomain, 1.0, rng)});
    }
    polys.emplace_back(j, domain, codomain, std::move(list));
  }
  return Jet(std::move(polys));
}

double sample_term_deriv_sup(const HomogeneousPoly& poly, const KMap& k, double eps, int n,
                             std::size_t probes, std::uint64_t seed) {
  const KMap scaled = dilate(k, eps);
  const Map term = [&poly, &scaled](const Element& x) { return eval(poly, scaled(x)); };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5 * k.identity_radius(), 1.2 * k.bound());
  const FDConfig fd{1e-3 * eps, 4};
  double best = 0.0;
  for (std::size_t i = 0; i < probes; ++i) {
    const Element u = random_element(k.space(), radius(rng), rng);
    const Element v = random_element(k.space(), 1.0, rng);
    const auto d = directional_deriv(term, scale(eps, u), v, n, fd);
    best = std::max(best, norm(d.value));
  }
  return best;
}

}  // namespace germext
