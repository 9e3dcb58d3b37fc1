#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "germext/kmaps.hpp"
#include "germext/spaces.hpp"

namespace germext {

/// Central differences with step halving and Richardson extrapolation.
struct FDConfig {
  double base_step = 1e-2;
  int levels = 4;
};

/// Randomized probing: norms log-uniform in norm_range, directions uniform.
struct ProbeConfig {
  std::size_t trials = 1000;
  std::pair<double, double> norm_range{1e-3, 1e3};
  std::uint64_t seed = 0;
};

struct DirectionalDerivative {
  Element value;
  /// |difference of the last two extrapolants|, max over components.
  double error;
};

inline constexpr int kMaxFDOrder = 4;

/// n-th derivative of s |-> F(x + s v) at s = 0, 0 <= n <= 4.
DirectionalDerivative directional_deriv(const Map& f, const Element& x, const Element& v, int n,
                                        const FDConfig& cfg = {});

struct TaylorFit {
  /// c_0..c_J with F(s v) ~ sum_n c_n s^n.
  std::vector<Element> coeffs;
  /// max |fit - F| over the fit nodes.
  double residual;
  bool ill_conditioned;
};

/// Least-squares degree-J fit of s |-> F(s v) at Chebyshev points of [-radius, radius].
/// ill_conditioned is set when residual > residual_tol * max(1, max |F|).
TaylorFit taylor_coeffs(const Map& f, const Element& v, int degree, double radius,
                        std::size_t nodes = 64, double residual_tol = 1e-9);

/// Draws one probe for `space` under cfg (norm log-uniform, direction uniform).
Element sample_probe(const Space& space, const ProbeConfig& cfg, std::mt19937_64& rng);

/// max ||F(x)|| over cfg.trials probes; deterministic per seed.
double sup_probe(const Map& f, const Space& domain, const ProbeConfig& cfg);

struct IdentityRadiusReport {
  /// Largest probe norm r such that every probe with norm <= r satisfied K(x) == x.
  double radius;
  /// Some probe with norm <= K.identity_radius() was moved.
  bool violation;
  std::size_t probes;
};

IdentityRadiusReport identity_radius_probe(const KMap& k, const ProbeConfig& cfg);

/// Bitwise equality of two elements (same space, same stored values).
bool identical(const Element& x, const Element& y);

}  // namespace germext
