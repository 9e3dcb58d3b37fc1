#include "germext/scalar_smooth.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace germext {

namespace {

constexpr int kSupSamples = 20001;

// q_k with e^(k)(s) = exp(-1/s) q_k(1/s); q_0 = 1, q_{k+1}(u) = u^2 (q_k(u) - q_k'(u)).
const std::vector<double>& kernel_poly(int k) {
  static std::mutex mutex;
  static std::vector<std::vector<double>> polys{{1.0}};
  std::lock_guard lock(mutex);
  while (static_cast<int>(polys.size()) <= k) {
    const auto& q = polys.back();
    std::vector<double> next(q.size() + 2, 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      next[i + 2] += q[i];
      if (i > 0) next[i + 1] -= static_cast<double>(i) * q[i];
    }
    polys.push_back(std::move(next));
  }
  return polys[static_cast<std::size_t>(k)];
}

double horner(const std::vector<double>& c, double u) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}

void check_thresholds(double a, double b) {
  if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) {
    throw std::invalid_argument("cutoff thresholds must satisfy 0 < a < b, got a=" +
                                std::to_string(a) + " b=" + std::to_string(b));
  }
}

}  // namespace

namespace detail {

std::vector<double> kernel_taylor(double s, int k) {
  std::vector<double> out(static_cast<std::size_t>(k) + 1, 0.0);
  if (s <= 0.0) return out;
  const double u = 1.0 / s;
  const double e = std::exp(-u);
  if (e == 0.0) return out;
  double factorial = 1.0;
  for (int i = 0; i <= k; ++i) {
    if (i > 0) factorial *= i;
    out[static_cast<std::size_t>(i)] = e * horner(kernel_poly(i), u) / factorial;
  }
  return out;
}

std::vector<double> step_taylor(double s, int k) {
  std::vector<double> out(static_cast<std::size_t>(k) + 1, 0.0);
  if (s <= 0.0) return out;
  if (s >= 1.0) {
    out[0] = 1.0;
    return out;
  }
  const auto num = kernel_taylor(s, k);
  auto den = kernel_taylor(1.0 - s, k);
  for (std::size_t i = 0; i < den.size(); ++i) {
    if (i % 2 == 1) den[i] = -den[i];
    den[i] += num[i];
  }
  // Truncated power-series division out = num / den.
  for (std::size_t i = 0; i < out.size(); ++i) {
    double acc = num[i];
    for (std::size_t m = 1; m <= i; ++m) acc -= den[m] * out[i - m];
    out[i] = acc / den[0];
  }
  return out;
}

}  // namespace detail

ScalarSmoothFn::ScalarSmoothFn(CutoffKind kind, double inner, double outer, int max_order)
    : kind_(kind), inner_(inner), outer_(outer), max_order_(max_order) {
  if (max_order < 0) throw std::invalid_argument("max_deriv_order must be nonnegative");
  if (kind == CutoffKind::step) {
    inner_ = 0.0;
    outer_ = 1.0;
  } else {
    check_thresholds(inner, outer);
  }

  const double lo = 0.0;
  const double hi = outer_;
  const double spacing = (hi - lo) / (kSupSamples - 1);
  std::vector<double> sampled(static_cast<std::size_t>(max_order_) + 2, 0.0);
  for (int i = 0; i < kSupSamples; ++i) {
    const double s = lo + spacing * i;
    const auto d = derivatives(s, max_order_ + 1);
    for (std::size_t k = 0; k < d.size(); ++k) sampled[k] = std::max(sampled[k], std::abs(d[k]));
  }
  sups_.resize(static_cast<std::size_t>(max_order_) + 1);
  for (std::size_t k = 0; k < sups_.size(); ++k) {
    sups_[k] = sampled[k] + 0.5 * spacing * sampled[k + 1];
  }
}

std::vector<double> ScalarSmoothFn::taylor(double s, int k) const {
  const auto n = static_cast<std::size_t>(k) + 1;
  if (kind_ == CutoffKind::step) return detail::step_taylor(s, k);

  const double r = std::abs(s);
  std::vector<double> psi(n, 0.0);
  if (r <= inner_) {
    psi[0] = 1.0;
  } else if (r < outer_) {
    const double width = outer_ - inner_;
    psi = detail::step_taylor((outer_ - r) / width, k);
    // Chain rule through t = (b - |s|)/(b - a), dt/ds = -sign(s)/(b - a).
    const double slope = (s > 0.0 ? -1.0 : 1.0) / width;
    double power = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
      power *= slope;
      psi[i] *= power;
    }
  }
  if (kind_ == CutoffKind::bump) return psi;

  std::vector<double> out(n, 0.0);
  if (r <= inner_) {
    out[0] = s;
    if (n > 1) out[1] = 1.0;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = s * psi[i] + (i > 0 ? psi[i - 1] : 0.0);
  return out;
}

double ScalarSmoothFn::operator()(double s) const {
  switch (kind_) {
    case CutoffKind::step:
      if (s <= 0.0) return 0.0;
      if (s >= 1.0) return 1.0;
      break;
    case CutoffKind::bump:
      if (std::abs(s) <= inner_) return 1.0;
      if (!(std::abs(s) < outer_)) return 0.0;
      break;
    case CutoffKind::truncator:
      if (std::abs(s) <= inner_) return s;
      if (!(std::abs(s) < outer_)) return 0.0;
      break;
  }
  return taylor(s, 0)[0];
}

std::vector<double> ScalarSmoothFn::derivatives(double s, int k) const {
  if (k < 0) throw std::out_of_range("derivative order must be nonnegative");
  auto out = taylor(s, k);
  out[0] = (*this)(s);
  double factorial = 1.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    factorial *= static_cast<double>(i);
    out[i] *= factorial;
  }
  return out;
}

double ScalarSmoothFn::derivative(double s, int k) const {
  if (k < 0 || k > max_order_) {
    throw std::out_of_range("derivative order " + std::to_string(k) + " outside [0, " +
                            std::to_string(max_order_) + "]");
  }
  if (k == 0) return (*this)(s);
  return derivatives(s, k)[static_cast<std::size_t>(k)];
}

double ScalarSmoothFn::derivative_sup(int k) const {
  if (k < 0 || k > max_order_) throw std::out_of_range("derivative_sup: order out of range");
  return sups_[static_cast<std::size_t>(k)];
}

ScalarSmoothFn make_smooth_step(int max_order) {
  return ScalarSmoothFn(CutoffKind::step, 0.0, 1.0, max_order);
}

ScalarSmoothFn make_bump(double a, double b, int max_order) {
  return ScalarSmoothFn(CutoffKind::bump, a, b, max_order);
}

ScalarSmoothFn make_truncator(double a, double b, int max_order) {
  return ScalarSmoothFn(CutoffKind::truncator, a, b, max_order);
}

double eval_deriv(const ScalarSmoothFn& f, double s, int k) { return f.derivative(s, k); }

}  // namespace germext
