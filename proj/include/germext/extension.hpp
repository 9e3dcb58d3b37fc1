#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "germext/kmaps.hpp"
#include "germext/spaces.hpp"

namespace germext {

/// Raised when a LocalMap is evaluated outside its domain ball.
class OutsideDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Representative of a germ at 0, defined on the open ball ||x|| < domain_radius.
class LocalMap {
 public:
  /// Optional certified bounds on the closed ball of radius r < domain_radius:
  /// sup ||f|| and sup ||f^(k)||, k = 0..K (entry 0 repeats the sup bound).
  using BallBounds = std::function<std::vector<double>(double r)>;

  LocalMap(double domain_radius, Map evaluator, Space codomain, BallBounds ball_bounds = {});

  /// Throws OutsideDomain unless ||x|| < domain_radius().
  Element operator()(const Element& x) const;

  double domain_radius() const noexcept { return radius_; }
  const Space& codomain() const noexcept { return codomain_; }
  bool has_ball_bounds() const noexcept { return static_cast<bool>(ball_bounds_); }
  std::vector<double> ball_bounds(double r) const;

 private:
  double radius_;
  Map evaluator_;
  Space codomain_;
  BallBounds ball_bounds_;
};

/// A globally defined map with the radius on which it reproduces its germ.
struct GlobalMap {
  Map evaluator;
  double agreement_radius = 0.0;
  double sup_bound = 0.0;
  /// true when sup_bound comes from LocalMap::ball_bounds rather than sampling.
  bool sup_bound_certified = false;
  /// Chain-rule bounds on sup ||F^(k)||, k = 0..K, when both factors carry bounds.
  std::vector<double> deriv_bounds;

  Element operator()(const Element& x) const { return evaluator(x); }
};

struct ExtendOptions {
  /// Defaults to 0.9 * f.domain_radius().
  std::optional<double> eps;
  std::size_t sup_samples = 10000;
  std::uint64_t seed = 0;
};

/// F = f o rescale(k, eps): agrees with f on ||x|| <= k.identity_radius() * eps / k.bound().
GlobalMap extend_germ(const LocalMap& f, const KMap& k, const ExtendOptions& options = {});

/// F(x) = delta(x) f(x) for ||x|| < u_radius, 0 otherwise (l_p spaces).
GlobalMap bump_extend(const LocalMap& f, const NormBump& delta, double u_radius);

/// 1 / (1 - x(t)) integrated by Simpson; throws OutsideDomain if sup |x| >= 1.
double integral_functional(const GridFn& x);

/// 1 / (1 - h_{1/3,1/2}(x(t))) integrated by Simpson; defined for every x.
double integral_functional_global(const GridFn& x);

/// The integral functional as a LocalMap on C(M) (radius 1, scalar codomain),
/// with certified ball bounds k! / (1 - r)^(k + 1).
LocalMap integral_local_map();

}  // namespace germext
