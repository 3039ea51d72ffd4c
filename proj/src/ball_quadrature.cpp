#include "lanemden/ball_quadrature.hpp"

#include <cmath>
#include <numbers>

#include "lanemden/errors.hpp"
#include "lanemden/parallel.hpp"
#include "lanemden/quadrature.hpp"

namespace lanemden {

BallQuadrature::BallQuadrature(int n, double delta_min, int level) : n_(n), level_(level), delta_min_(delta_min) {
  if (n < 2) throw DomainError("ball quadrature needs n >= 2");
  if (!(delta_min > 0.0 && delta_min <= 1.0)) throw DomainError("delta_min must lie in (0, 1]");
  if (level < 0 || level > 8) throw DomainError("refinement level must lie in [0, 8]");
  const int order = 12 + 4 * level;
  const double ratio = std::pow(2.0, 1.0 / (level + 1));
  const GaussRule& g = gauss_legendre(order);
  const double area = sphere_area(n - 2);
  auto weight = [&](double s) { return area * std::pow(s, n - 2); };
  const double pi = std::numbers::pi;

  // Region A: r in [0, 1] around e_n, theta in [0, arccos(r/2)].
  std::vector<double> rb{0.0};
  for (double b : geometric_breaks(0.25 * delta_min, 1.0, ratio)) rb.push_back(b);
  for (std::size_t k = 0; k + 1 < rb.size(); ++k) {
    std::vector<Node> chunk;
    const double rm = 0.5 * (rb[k] + rb[k + 1]), rh = 0.5 * (rb[k + 1] - rb[k]);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      const double r = rm + rh * g.x[i];
      const double th_max = std::acos(0.5 * r);
      for (int half = 0; half < 2; ++half) {
        const double a = 0.5 * th_max * half, b = 0.5 * th_max * (half + 1);
        const double tm = 0.5 * (a + b), th = 0.5 * (b - a);
        for (std::size_t j = 0; j < g.x.size(); ++j) {
          const double theta = tm + th * g.x[j];
          const double s = r * std::sin(theta), t = 1.0 - r * std::cos(theta);
          chunk.push_back({s, t, g.w[i] * rh * g.w[j] * th * r * weight(s)});
        }
      }
    }
    count_ += chunk.size();
    chunks_.push_back(std::move(chunk));
  }

  // Region B: r in [1, min(1/cos, 2cos)], theta in [0, pi/3], split at pi/4.
  const double th_breaks[] = {0.0, pi / 8.0, pi / 4.0, 7.0 * pi / 24.0, pi / 3.0};
  for (int seg = 0; seg < 4; ++seg) {
    std::vector<Node> chunk;
    const double a = th_breaks[seg], b = th_breaks[seg + 1];
    const double tm = 0.5 * (a + b), th = 0.5 * (b - a);
    for (std::size_t j = 0; j < g.x.size(); ++j) {
      const double theta = tm + th * g.x[j];
      const double c = std::cos(theta);
      const double r_hi = theta <= pi / 4.0 ? 1.0 / c : 2.0 * c;
      const double rm = 0.5 * (1.0 + r_hi), rh = 0.5 * (r_hi - 1.0);
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double r = rm + rh * g.x[i];
        const double s = r * std::sin(theta), t = 1.0 - r * c;
        chunk.push_back({s, t, g.w[j] * th * g.w[i] * rh * r * weight(s)});
      }
    }
    count_ += chunk.size();
    chunks_.push_back(std::move(chunk));
  }
}

std::vector<double> BallQuadrature::integrate_many(std::size_t count,
                                                   const std::function<void(double, double, double*)>& f) const {
  std::vector<std::vector<double>> partial(chunks_.size(), std::vector<double>(count, 0.0));
  parallel_chunks(chunks_.size(), [&](std::size_t c) {
    std::vector<double> up(count), down(count), acc(count, 0.0);
    for (const Node& nd : chunks_[c]) {
      f(nd.s, nd.t, up.data());
      f(nd.s, -nd.t, down.data());
      for (std::size_t k = 0; k < count; ++k) acc[k] += nd.w * (up[k] + down[k]);
    }
    partial[c] = acc;
    return 0.0;
  });
  std::vector<double> out(count);
  std::vector<double> column(chunks_.size());
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t c = 0; c < chunks_.size(); ++c) column[c] = partial[c][k];
    out[k] = pairwise_sum(column);
  }
  return out;
}

double BallQuadrature::integrate(const std::function<double(double, double)>& f) const {
  return integrate_many(1, [&](double s, double t, double* out) { out[0] = f(s, t); })[0];
}

double BallQuadrature::integrate_upper(const std::function<double(double, double)>& f) const {
  const auto sums = parallel_chunks(chunks_.size(), [&](std::size_t c) {
    double acc = 0.0;
    for (const Node& nd : chunks_[c]) acc += nd.w * f(nd.s, nd.t);
    return acc;
  });
  return pairwise_sum(sums);
}

}  // namespace lanemden
