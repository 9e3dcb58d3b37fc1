#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "germext/spaces.hpp"

namespace germext {

/// <phi, x> = sum_i phi_i x_i over the element's stored values.
double pairing(std::span<const double> phi, const Element& x);

/// Dual norm of the pairing functional phi with respect to the domain norm:
/// l1 for grid (sup norm), l_q with q = p/(p-1) for pvec, and the Chebyshev
/// coefficient bound |phi_0| + 2 sum_{k>0} |phi_k| for cheb.
double dual_norm(std::span<const double> phi, const Space& domain);

/// c * <phi, .>^j * y, the diagonal of a symmetric rank-one j-linear map.
struct RankOneTerm {
  double weight;
  std::vector<double> functional;
  Element output;
};

/// Degree-j homogeneous polynomial map as a finite sum of rank-one terms.
class HomogeneousPoly {
 public:
  HomogeneousPoly(int degree, Space domain, Space codomain, std::vector<RankOneTerm> terms = {});

  int degree() const noexcept { return degree_; }
  const Space& domain() const noexcept { return domain_; }
  const Space& codomain() const noexcept { return codomain_; }
  std::span<const RankOneTerm> terms() const noexcept { return terms_; }

  Element operator()(const Element& x) const;

 private:
  int degree_;
  Space domain_;
  Space codomain_;
  std::vector<RankOneTerm> terms_;
};

/// sum_k c_k <phi_k, x>^j y_k; throws std::invalid_argument on dimension mismatch.
Element eval(const HomogeneousPoly& poly, const Element& x);

/// n-th derivative P^(n)(z)(v)^n. Zero for n > degree.
Element deriv_at(const HomogeneousPoly& poly, const Element& z, const Element& v, int n);

/// c_j = sum_k |c_k| ||phi_k||_*^j ||y_k||, so ||P(x)|| <= c_j ||x||^j.
double norm_bound(const HomogeneousPoly& poly);

/// Absolute-value majorant of deriv_at: j!/(j-n)! sum_k |c_k||<phi_k,z>|^{j-n}|<phi_k,v>|^n ||y_k||.
/// Used as the magnitude scale when judging relative errors.
double deriv_magnitude(const HomogeneousPoly& poly, const Element& z, const Element& v, int n);

/// j!/(j-n)! as a double (0 when n > j).
double falling_factorial(int j, int n);

}  // namespace germext
