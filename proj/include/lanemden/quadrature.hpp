#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lanemden {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Cached rule of the given order (1..128). Thread-safe.
const GaussRule& gauss_legendre(int order);

/// Integral of f over [a, b] with a single Gauss panel.
template <class F>
double gauss_panel(F&& f, double a, double b, int order) {
  const GaussRule& g = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) sum += g.w[i] * f(mid + half * g.x[i]);
  return sum * half;
}

/// Integral of f over consecutive panels [b_k, b_{k+1}].
template <class F>
double gauss_panels(F&& f, std::span<const double> breaks, int order) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    if (breaks[k + 1] > breaks[k]) sum += gauss_panel(f, breaks[k], breaks[k + 1], order);
  }
  return sum;
}

/// Breakpoints lo, lo*ratio, ... ending exactly at hi (lo > 0).
std::vector<double> geometric_breaks(double lo, double hi, double ratio);

/// Surface measure of the unit sphere S^{dim} in R^{dim+1}.
double sphere_area(int dim);

/// Volume of the unit ball in R^n.
double ball_volume(int n);

/// Pairwise (cascade) summation in a fixed order.
double pairwise_sum(std::span<const double> values);

}  // namespace lanemden
