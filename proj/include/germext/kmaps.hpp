#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "germext/scalar_smooth.hpp"
#include "germext/spaces.hpp"

namespace germext {

/// Partial Bell polynomials B[n][k](x_1, ..., x_{n-k+1}), 0 <= k <= n <= max_n.
/// x[m] holds x_m; x[0] is ignored.
std::vector<std::vector<double>> bell_table(std::span<const double> x, int max_n);

/// Faa di Bruno majorant for sup ||(f o g)^(n)||: sum_{k=1..n} outer[k] * B_{n,k}(inner).
/// outer[k] bounds ||f^(k)||, inner[m] bounds ||g^(m)||. n = 0 returns outer[0].
double composite_derivative_majorant(std::span<const double> outer, std::span<const double> inner,
                                     int n);

/// delta(x) = tau(sum_i x_i^p), tau = psi_{rho_in^p, rho_out^p}: a C-infinity bump
/// at zero on l_p for even p. Equal to 1 on ||x||_p <= rho_in, 0 off ||x||_p < rho_out.
class NormBump {
 public:
  NormBump(double rho_in, double rho_out, int p);

  double rho_in() const noexcept { return rho_in_; }
  double rho_out() const noexcept { return rho_out_; }
  int p() const noexcept { return p_; }
  const ScalarSmoothFn& profile() const noexcept { return profile_; }

  double operator()(const PVector& x) const { return at_power_sum(power_sum(x, 1.0)); }
  double at_power_sum(double s) const { return profile_(s); }
  /// sum_i (scale * x_i)^p
  double power_sum(const PVector& x, double scale) const;

  /// Bounds on sup_x |delta^(n)(x)[v]^n| over unit v, n = 0..max_deriv_order.
  std::vector<double> derivative_bounds() const;

 private:
  double rho_in_;
  double rho_out_;
  int p_;
  ScalarSmoothFn profile_;
};

enum class KMapKind { pointwise, bump };

/// A global bounded C-infinity map H with H(x) = x on ||x|| <= identity_radius().
///
/// Every construction here has the multiplier form H(x) = m(lambda x) (.) x,
/// with m = 1 on the flat core; rescaling only changes lambda. That keeps the
/// identity region bit-exact after any number of rescalings.
class KMap {
 public:
  static KMap pointwise(double a, double b, const Space& space);
  static KMap bump(double rho_in, double rho_out, const Space& space);

  Element operator()(const Element& x) const;

  /// Scalar profile s |-> psi(lambda s) s of a pointwise K-map.
  double pointwise_value(double s) const;

  /// Multiplier m with H(x) = m (.) x. Grid and pvec spaces only.
  std::vector<double> multiplier(const Element& x) const;

  KMapKind kind() const noexcept { return kind_; }
  const Space& space() const noexcept { return space_; }
  double identity_radius() const noexcept { return base_identity_radius_ / input_scale_; }
  double bound() const noexcept { return base_bound_ / input_scale_; }
  /// False where the bound describes sample values only (cheb spaces).
  bool bound_certified() const noexcept { return certified_; }
  int deriv_order() const noexcept { return cutoff_.max_deriv_order(); }
  /// Bound on sup_x ||H^(m)(x)|| as an m-linear map; m = 0 gives bound().
  double derivative_bound(int m) const;
  /// derivative_bound(0..deriv_order()).
  std::vector<double> derivative_bounds() const;

  double input_scale() const noexcept { return input_scale_; }
  /// Parameters of the unscaled construction: (a, b) or (rho_in, rho_out).
  double inner_param() const noexcept { return inner_; }
  double outer_param() const noexcept { return outer_; }
  /// epsilons passed to rescale(), in application order.
  std::span<const double> rescalings() const noexcept { return rescalings_; }

  friend KMap rescale(const KMap& k, double eps);

 private:
  KMap(KMapKind kind, const Space& space, double inner, double outer, ScalarSmoothFn cutoff,
       double identity_radius, double bound, std::vector<double> deriv_bounds, bool certified);

  KMapKind kind_;
  Space space_;
  double inner_;
  double outer_;
  ScalarSmoothFn cutoff_;  // psi_{a,b} (pointwise) or the power-sum profile (bump)
  double base_identity_radius_;
  double base_bound_;
  std::vector<double> base_deriv_bounds_;
  bool certified_;
  double input_scale_ = 1.0;
  std::vector<double> rescalings_;
};

/// x |-> [t |-> psi_{a,b}(x(t)) x(t)] on a grid or cheb space; r_id = a, bound = b.
KMap pointwise_kmap(double a, double b, const Space& space);

/// x |-> delta(x) x on an l_p section (p even); r_id = rho_in, bound = rho_out.
KMap bump_kmap(double rho_in, double rho_out, const Space& space);

/// x |-> (eps/N) H((N/eps) x), N = k.bound(); identity radius scales by eps/N, bound becomes eps.
KMap rescale(const KMap& k, double eps);

/// x |-> eps H(x/eps), i.e. rescale(k, eps * k.bound()).
KMap dilate(const KMap& k, double eps);

/// x |-> z + (1/c) H(c (x - z)) with c = r_id / (r + margin/2): the identity on
/// ||x - z|| <= r + margin/2, image inside ||x - z|| <= bound / c.
class BallKMap {
 public:
  BallKMap(KMap base, Element center, double radius, double margin);

  Element operator()(const Element& x) const;

  const KMap& base() const noexcept { return base_; }
  const Element& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  double margin() const noexcept { return margin_; }
  double scale_constant() const noexcept { return c_; }
  double identity_radius() const noexcept { return radius_ + 0.5 * margin_; }
  double image_radius() const noexcept { return base_.bound() / c_; }

 private:
  KMap base_;
  Element center_;
  double radius_;
  double margin_;
  double c_;
};

BallKMap kmap_at_ball(const KMap& k, const Element& z, double r, double margin);

/// A closed subspace given by a membership test and a projection onto it.
struct Subspace {
  std::string name;
  std::function<bool(const Element&)> contains;
  std::function<Element(const Element&)> project;
};

/// The ideal {x in C(M) : x(t_index) = 0}.
Subspace vanishing_at(std::size_t index);

/// Number of probes x in the subspace with H(x) outside it. Probe norms are
/// log-uniform in [norm_lo, norm_hi].
std::size_t count_closure_violations(const KMap& k, const Subspace& sub, std::size_t trials,
                                     double norm_lo, double norm_hi, std::uint64_t seed);

struct C1ProbeRow {
  double frequency;
  double input_norm;   // ||x||_{C^1}
  double output_norm;  // ||H(x)||_{C^1}
  double output_sup;   // max_t |H(x)(t)|
  double aliasing_error;
};

/// Applies a cheb-space K-map to x(t) = amplitude * sin(M t) for each M.
std::vector<C1ProbeRow> c1_growth_probe(const KMap& k, std::span<const double> frequencies,
                                        double amplitude);

}  // namespace germext
