#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "germext/kmaps.hpp"
#include "germext/polynomials.hpp"
#include "germext/verify.hpp"

namespace germext {

/// Polynomials P_0..P_J with degree(P_j) == j, sharing one domain and codomain.
class Jet {
 public:
  explicit Jet(std::vector<HomogeneousPoly> polys);

  int order() const noexcept { return static_cast<int>(polys_.size()) - 1; }
  const HomogeneousPoly& operator[](std::size_t j) const { return polys_[j]; }
  std::span<const HomogeneousPoly> polys() const noexcept { return polys_; }
  const Space& domain() const { return polys_.front().domain(); }
  const Space& codomain() const { return polys_.front().codomain(); }

 private:
  std::vector<HomogeneousPoly> polys_;
};

/// c_{j,n}: bound on sup ||(P_j o H)^(n)|| from norm_bound(P_j) and the K-map's
/// derivative bounds, via the Faa di Bruno majorant. Independent of any dilation.
double term_constant(const HomogeneousPoly& poly, const KMap& k, int n);

/// eps^{j-n} c_{j,n}, the bound on sup ||(P_j o H_eps)^(n)|| with H_eps(x) = eps H(x/eps).
double term_deriv_bound(const HomogeneousPoly& poly, const KMap& k, double eps, int n);

/// eps_j = min(eps_{j-1}, 1, 2^-j budget / (1 + chat_j)), chat_j = max_{n<j} c_{j,n};
/// eps_j = eps_{j-1} (starting at 1) when chat_j == 0.
std::vector<double> choose_epsilons(const Jet& jet, const KMap& k, double budget);

/// f(x) = sum_{j<=J} P_j(eps_j H(x/eps_j)) / j!.
class BorelSeries {
 public:
  BorelSeries(Jet jet, KMap base, std::vector<double> epsilons);

  Element operator()(const Element& x) const;

  /// P_j(H_j(x)) / j! for j = 0..J; operator() is their sum.
  std::vector<Element> terms(const Element& x) const;

  const Jet& jet() const noexcept { return jet_; }
  const KMap& base() const noexcept { return base_; }
  std::span<const double> epsilons() const noexcept { return epsilons_; }
  int truncation() const noexcept { return jet_.order(); }
  const KMap& scaled_kmap(std::size_t j) const { return scaled_[j]; }

  /// min_{j>=1} eps_j * r_id: the ball on which every H_j is the identity.
  double identity_radius() const;
  /// sum_j norm_bound(P_j) (eps_j N)^j / j!, N = base bound.
  double sup_bound() const;
  /// The looser sum_j norm_bound(P_j) eps_j^j / j!.
  double sup_bound_unscaled() const;

 private:
  Jet jet_;
  KMap base_;
  std::vector<double> epsilons_;
  std::vector<KMap> scaled_;
};

/// Default derivative budget: large enough that the identity ball of a J = 4 series
/// with unit-scale terms resolves order-4 coefficients well below 1e-6.
inline constexpr double kDefaultBudget = 1e5;

BorelSeries make_borel_series(const Jet& jet, const KMap& k, double budget = kDefaultBudget);

Element eval_series(const BorelSeries& series, const Element& x);

struct JetResidual {
  int order;
  std::size_t direction;
  /// ||n! c_n - P_n(v)|| / (norm_bound(P_n) ||v||^n), see verify_jet.
  double rel_error;
  double fit_radius;
  bool pass;
};

struct JetReport {
  std::vector<JetResidual> residuals;
  double max_rel_error = 0.0;
  bool pass = true;
};

/// Reads off Taylor coefficients of s |-> f(s v) on the identity ball and compares
/// n! c_n with P_n(v). The error is relative to norm_bound(P_n) ||v||^n, and
/// absolute when that scale vanishes. In double precision the n-th coefficient is
/// resolved to about 1e-15 / radius^n, so small budgets leave high orders unreadable.
JetReport verify_jet(const BorelSeries& series, std::span<const Element> directions, double tol);

/// Random jet: `terms` rank-one terms per degree, c uniform in [-1, 1], phi with
/// unit dual norm, y a unit codomain vector.
Jet random_jet(int order, const Space& domain, const Space& codomain, std::size_t terms,
               std::uint64_t seed);

/// Sampled sup over probes x = eps u of |(P_j o H_eps)^(n)(x)[v]^n| with unit v.
/// The probe set u is drawn from `seed`, so dilations reuse one probe family.
double sample_term_deriv_sup(const HomogeneousPoly& poly, const KMap& k, double eps, int n,
                             std::size_t probes, std::uint64_t seed);

}  // namespace germext
