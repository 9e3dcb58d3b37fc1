#include "germext/polynomials.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace germext {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

void check_domain(const HomogeneousPoly& poly, const Element& x) {
  const Space s = space_of(x);
  if (s.kind != poly.domain().kind || s.dim != poly.domain().dim) {
    throw std::invalid_argument("polynomial domain mismatch: expected " +
                                to_string(poly.domain().kind) + "[" +
                                std::to_string(poly.domain().dim) + "], got " + to_string(s.kind) +
                                "[" + std::to_string(s.dim) + "]");
  }
}

}  // namespace

double pairing(std::span<const double> phi, const Element& x) {
  const auto xv = values(x);
  if (phi.size() != xv.size()) throw std::invalid_argument("pairing: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) acc += phi[i] * xv[i];
  return acc;
}

double dual_norm(std::span<const double> phi, const Space& domain) {
  switch (domain.kind) {
    case SpaceKind::grid: {
      double acc = 0.0;
      for (double v : phi) acc += std::abs(v);
      return acc;
    }
    case SpaceKind::pvec: {
      const double q = static_cast<double>(domain.p) / (domain.p - 1);
      double acc = 0.0;
      for (double v : phi) acc += std::pow(std::abs(v), q);
      return std::pow(acc, 1.0 / q);
    }
    case SpaceKind::cheb: {
      double acc = 0.0;
      for (std::size_t i = 0; i < phi.size(); ++i) acc += (i == 0 ? 1.0 : 2.0) * std::abs(phi[i]);
      return acc;
    }
  }
  return 0.0;
}

double falling_factorial(int j, int n) {
  if (n > j) return 0.0;
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= static_cast<double>(j - i);
  return r;
}

HomogeneousPoly::HomogeneousPoly(int degree, Space domain, Space codomain,
                                 std::vector<RankOneTerm> terms)
    : degree_(degree), domain_(domain), codomain_(codomain), terms_(std::move(terms)) {
  if (degree_ < 0) throw std::invalid_argument("polynomial degree must be nonnegative");
  for (const auto& t : terms_) {
    if (t.functional.size() != domain_.dim) {
      throw std::invalid_argument("rank-one term functional has wrong dimension");
    }
    if (!(space_of(t.output) == codomain_)) {
      throw std::invalid_argument("rank-one term output is not in the codomain");
    }
  }
}

Element HomogeneousPoly::operator()(const Element& x) const { return eval(*this, x); }

Element eval(const HomogeneousPoly& poly, const Element& x) {
  check_domain(poly, x);
  std::vector<double> acc(poly.codomain().dim, 0.0);
  for (const auto& t : poly.terms()) {
    const double w = t.weight * ipow(pairing(t.functional, x), poly.degree());
    const auto y = values(t.output);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * y[i];
  }
  return with_values(zero_element(poly.codomain()), std::move(acc));
}

Element deriv_at(const HomogeneousPoly& poly, const Element& z, const Element& v, int n) {
  check_domain(poly, z);
  check_domain(poly, v);
  if (n < 0) throw std::invalid_argument("derivative order must be nonnegative");
  std::vector<double> acc(poly.codomain().dim, 0.0);
  const int j = poly.degree();
  if (n <= j) {
    const double ff = falling_factorial(j, n);
    for (const auto& t : poly.terms()) {
      const double w = ff * t.weight * ipow(pairing(t.functional, z), j - n) *
                       ipow(pairing(t.functional, v), n);
      const auto y = values(t.output);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * y[i];
    }
  }
  return with_values(zero_element(poly.codomain()), std::move(acc));
}

double norm_bound(const HomogeneousPoly& poly) {
  double c = 0.0;
  for (const auto& t : poly.terms()) {
    c += std::abs(t.weight) * ipow(dual_norm(t.functional, poly.domain()), poly.degree()) *
         norm(t.output);
  }
  return c;
}

double deriv_magnitude(const HomogeneousPoly& poly, const Element& z, const Element& v, int n) {
  const int j = poly.degree();
  if (n > j) return 0.0;
  double acc = 0.0;
  for (const auto& t : poly.terms()) {
    acc += std::abs(t.weight) * ipow(std::abs(pairing(t.functional, z)), j - n) *
           ipow(std::abs(pairing(t.functional, v)), n) * norm(t.output);
  }
  return falling_factorial(j, n) * acc;
}

}  // namespace germext
