#include "lanemden/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "lanemden/errors.hpp"

namespace lanemden {

namespace {

constexpr int kMaxOrder = 128;

GaussRule build_rule(int m) {
  GaussRule rule;
  rule.x.resize(m);
  rule.w.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = m * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 0; j < m; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
    }
    dp = m * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.x[i] = -z;
    rule.x[m - 1 - i] = z;
    rule.w[i] = w;
    rule.w[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.x[m / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > kMaxOrder) throw DomainError("Gauss order out of range");
  static std::array<GaussRule, kMaxOrder + 1> rules;
  static std::array<std::once_flag, kMaxOrder + 1> flags;
  std::call_once(flags[order], [order] { rules[order] = build_rule(order); });
  return rules[order];
}

std::vector<double> geometric_breaks(double lo, double hi, double ratio) {
  if (!(lo > 0.0) || !(hi > lo) || !(ratio > 1.0)) throw DomainError("bad geometric mesh");
  const int count = std::max(1, static_cast<int>(std::ceil(std::log(hi / lo) / std::log(ratio) - 1e-9)));
  const double r = std::pow(hi / lo, 1.0 / count);
  std::vector<double> out(count + 1);
  for (int k = 0; k <= count; ++k) out[k] = lo * std::pow(r, k);
  out.front() = lo;
  out.back() = hi;
  return out;
}

double sphere_area(int dim) {
  const double m = dim + 1.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
}

double ball_volume(int n) { return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

double pairwise_sum(std::span<const double> values) {
  const std::size_t size = values.size();
  if (size == 0) return 0.0;
  if (size <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = size / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

}  // namespace lanemden
