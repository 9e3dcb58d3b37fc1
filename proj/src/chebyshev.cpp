#include "germext/chebyshev.hpp"

#include <cmath>
#include <numbers>

namespace germext::chebyshev {

std::vector<double> gauss_nodes(std::size_t count) {
  std::vector<double> nodes(count);
  for (std::size_t m = 0; m < count; ++m) {
    nodes[m] = std::cos(std::numbers::pi * (static_cast<double>(m) + 0.5) / static_cast<double>(count));
  }
  return nodes;
}

std::vector<double> fit_gauss(std::span<const double> values, std::size_t degree) {
  const std::size_t count = values.size();
  std::vector<double> coeffs(degree + 1, 0.0);
  for (std::size_t k = 0; k <= degree && k < count; ++k) {
    double acc = 0.0;
    for (std::size_t m = 0; m < count; ++m) {
      const double theta = std::numbers::pi * (static_cast<double>(m) + 0.5) / static_cast<double>(count);
      acc += values[m] * std::cos(static_cast<double>(k) * theta);
    }
    coeffs[k] = (k == 0 ? 1.0 : 2.0) * acc / static_cast<double>(count);
  }
  return coeffs;
}

double clenshaw(std::span<const double> coeffs, double xi) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    const double b0 = 2.0 * xi * b1 - b2 + coeffs[k];
    b2 = b1;
    b1 = b0;
  }
  return xi * b1 - b2 + (coeffs.empty() ? 0.0 : coeffs[0]);
}

std::vector<double> differentiate(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  if (n <= 1) return {0.0};
  std::vector<double> d(n + 1, 0.0);
  for (std::size_t k = n - 1; k >= 1; --k) {
    d[k - 1] = d[k + 1] + 2.0 * static_cast<double>(k) * coeffs[k];
  }
  d[0] *= 0.5;
  d.resize(n - 1);
  return d;
}

std::vector<double> to_monomial(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  std::vector<double> out(n, 0.0);
  std::vector<double> prev(n, 0.0);  // T_{k-1}
  std::vector<double> cur(n, 0.0);   // T_k
  prev[0] = 1.0;
  if (n > 0) out[0] += coeffs[0];
  if (n > 1) {
    cur[1] = 1.0;
    out[1] += coeffs[1];
  }
  for (std::size_t k = 2; k < n; ++k) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < n; ++i) next[i] -= prev[i];
    for (std::size_t i = 0; i < n; ++i) out[i] += coeffs[k] * next[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

}  // namespace germext::chebyshev
