#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Chebyshev series on the reference interval [-1, 1].
namespace germext::chebyshev {

/// Chebyshev-Gauss nodes cos(pi (m + 1/2) / count), m = 0..count-1.
std::vector<double> gauss_nodes(std::size_t count);

/// Discrete Chebyshev projection of samples taken at gauss_nodes(values.size()),
/// coefficients 0..degree. Exact for polynomials of degree < values.size().
std::vector<double> fit_gauss(std::span<const double> values, std::size_t degree);

double clenshaw(std::span<const double> coeffs, double xi);

/// Coefficients of d/dxi of the series; length shrinks by one (minimum 1).
std::vector<double> differentiate(std::span<const double> coeffs);

/// Monomial coefficients m_k of sum_k c_k T_k(xi) = sum_k m_k xi^k.
std::vector<double> to_monomial(std::span<const double> coeffs);

}  // namespace germext::chebyshev
