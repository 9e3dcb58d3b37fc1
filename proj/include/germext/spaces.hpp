#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace germext {

enum class SpaceKind { grid, cheb, pvec };

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);

/// Descriptor of one represented Banach space.
///
/// grid  C(M) with M = {t_i = i/(dim-1)}, sup norm over the samples
/// cheb  C^n[0,1] as a Chebyshev series of degree dim-1, n = smoothness
/// pvec  l_p truncated to dim coordinates, p even
struct Space {
  SpaceKind kind = SpaceKind::grid;
  std::size_t dim = 65;
  int p = 2;
  int smoothness = 0;

  friend bool operator==(const Space&, const Space&) = default;
};

/// Samples x(t_i) of a function on the finite grid t_i = i/(d-1).
class GridFn {
 public:
  explicit GridFn(std::vector<double> samples);

  template <class F>
  static GridFn from_function(std::size_t d, F&& f) {
    std::vector<double> s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = f(grid_point(i, d));
    return GridFn(std::move(s));
  }

  static double grid_point(std::size_t i, std::size_t d) {
    return static_cast<double>(i) / static_cast<double>(d - 1);
  }

  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  std::span<const double> samples() const noexcept { return samples_; }

 private:
  std::vector<double> samples_;
};

/// x(t) = sum_k c_k T_k(2t - 1) on [0, 1], normed in C^n.
class ChebFn {
 public:
  explicit ChebFn(std::vector<double> coeffs, int smoothness = 0);

  /// Interpolates f at degree+1 Chebyshev-Gauss points.
  static ChebFn from_function(const std::function<double(double)>& f, std::size_t degree,
                              int smoothness = 0);

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  int smoothness() const noexcept { return smoothness_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  double operator()(double t) const;
  /// d/dt; degree drops by one (a constant stays a degree-0 zero).
  ChebFn derivative() const;

 private:
  std::vector<double> coeffs_;
  int smoothness_;
};

/// Finite section of l_p, p a positive even integer.
class PVector {
 public:
  explicit PVector(std::vector<double> entries, int p = 2);

  int p() const noexcept { return p_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::vector<double> entries_;
  int p_;
};

using Element = std::variant<GridFn, ChebFn, PVector>;
using Map = std::function<Element(const Element&)>;

double sup_norm(const GridFn& x);
double p_norm(const PVector& x);
/// max_{k<=n} max over `samples` equispaced points of |x^(k)(t)|; 0 picks 8(D+1)+1 (>= 257).
double cn_norm(const ChebFn& x, std::size_t samples = 0);
double norm(const Element& x);

Space space_of(const Element& x);
std::span<const double> values(const Element& x);
/// Same representation and metadata as `like`, new data.
Element with_values(const Element& like, std::vector<double> data);
Element zero_element(const Space& space);
/// A real number as a one-dimensional l_2 element.
Element scalar_element(double value);

/// a x + b y; throws std::invalid_argument on representation mismatch.
Element lincomb(double a, const Element& x, double b, const Element& y);
Element scale(double a, const Element& x);

template <class G>
GridFn pointwise_apply(G&& g, const GridFn& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = g(x[i]);
  return GridFn(std::move(out));
}

struct ComposeResult {
  ChebFn value;
  /// Max deviation of the refit from g(x(t)) at the oversampled nodes.
  double aliasing_error;
};

/// g o x by sampling at 4(D+1) Chebyshev points and refitting to degree D.
ComposeResult cheb_compose(const std::function<double(double)>& g, const ChebFn& x);

/// Composite Simpson approximation of the integral over [0, 1]; d must be odd.
double quadrature(const GridFn& x);

/// Random element with norm(x) == target_norm (up to rounding).
Element random_element(const Space& space, double target_norm, std::mt19937_64& rng);

}  // namespace germext
