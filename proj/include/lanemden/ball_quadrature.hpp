#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lanemden {

/// Axisymmetric rule on the unit ball of R^n in coordinates s = |x'|, t = x_n,
/// with the weight |S^{n-2}| s^{n-2} included. The upper half uses polar
/// coordinates around e_n graded geometrically toward the pole; the lower half
/// is its mirror image, so odd integrands cancel exactly.
class BallQuadrature {
 public:
  struct Node {
    double s, t, w;
  };

  /// Level L: panel ratio 2^{1/(L+1)} and Gauss order 12+4L; finest panel ~ delta_min/4.
  BallQuadrature(int n, double delta_min, int level);

  int dimension() const { return n_; }
  int level() const { return level_; }
  double delta_min() const { return delta_min_; }
  std::size_t size() const { return 2 * count_; }

  /// Integral over the whole ball of f(s, t).
  double integrate(const std::function<double(double, double)>& f) const;
  /// Integral over the upper half (t > 0).
  double integrate_upper(const std::function<double(double, double)>& f) const;
  /// Several integrals in one sweep: f writes `out.size()` values per node.
  std::vector<double> integrate_many(std::size_t count,
                                     const std::function<void(double, double, double*)>& f) const;

  const std::vector<std::vector<Node>>& chunks() const { return chunks_; }

 private:
  int n_;
  int level_;
  double delta_min_;
  std::size_t count_ = 0;
  std::vector<std::vector<Node>> chunks_;  // upper-half nodes grouped per panel
};

}  // namespace lanemden
