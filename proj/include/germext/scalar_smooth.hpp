#pragma once

#include <vector>

namespace germext {

enum class CutoffKind { step, bump, truncator };

/// A C-infinity scalar cutoff built from the exp(-1/s) mollifier kernel.
///
/// Three shapes are supported:
///   step       sigma(s) = e(s) / (e(s) + e(1 - s)), transition on [0, 1]
///   bump       psi(s) = sigma((b - |s|) / (b - a)), 1 on [-a, a], 0 off (-b, b)
///   truncator  h(s) = s * psi(s)
///
/// Outside the transition regions the value is returned from an explicit
/// branch, so flat-region identities (psi == 1, h(s) == s, h == 0) hold
/// bit-exactly. Derivatives are exact up to max_deriv_order().
class ScalarSmoothFn {
 public:
  static constexpr int kDefaultOrder = 6;

  ScalarSmoothFn(CutoffKind kind, double inner, double outer, int max_order = kDefaultOrder);

  CutoffKind kind() const noexcept { return kind_; }
  /// Flat-region boundary a (0 for the step).
  double inner() const noexcept { return inner_; }
  /// Support boundary b (1 for the step).
  double outer() const noexcept { return outer_; }
  int max_deriv_order() const noexcept { return max_order_; }

  double operator()(double s) const;

  /// k-th derivative; throws std::out_of_range when k > max_deriv_order().
  double derivative(double s, int k) const;

  /// Values f(s), f'(s), ..., f^(k)(s). Any k >= 0 is accepted here; the
  /// public order limit only applies to derivative().
  std::vector<double> derivatives(double s, int k) const;

  /// Upper bound on sup_s |f^(k)(s)|, 0 <= k <= max_deriv_order().
  ///
  /// Computed from a dense sample of the transition region plus a Lipschitz
  /// correction from the sampled (k+1)-th derivative.
  double derivative_sup(int k) const;

 private:
  std::vector<double> taylor(double s, int k) const;

  CutoffKind kind_;
  double inner_;
  double outer_;
  int max_order_;
  std::vector<double> sups_;
};

ScalarSmoothFn make_smooth_step(int max_order = ScalarSmoothFn::kDefaultOrder);

/// psi_{a,b}; requires 0 < a < b.
ScalarSmoothFn make_bump(double a, double b, int max_order = ScalarSmoothFn::kDefaultOrder);

/// h_{a,b}(s) = psi_{a,b}(s) * s; requires 0 < a < b.
ScalarSmoothFn make_truncator(double a = 1.0 / 3.0, double b = 0.5,
                              int max_order = ScalarSmoothFn::kDefaultOrder);

double eval_deriv(const ScalarSmoothFn& f, double s, int k);

namespace detail {

/// Taylor coefficients e^(i)(s)/i!, i = 0..k, of e(s) = exp(-1/s) (0 for s <= 0).
std::vector<double> kernel_taylor(double s, int k);

/// Taylor coefficients of the smooth step at s.
std::vector<double> step_taylor(double s, int k);

}  // namespace detail

}  // namespace germext
