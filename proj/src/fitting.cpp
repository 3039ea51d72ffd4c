#include "lanemden/fitting.hpp"

#include <cmath>
#include <Eigen/Dense>

#include "lanemden/errors.hpp"

namespace lanemden {

PowerFit power_lsq(std::span<const double> x, std::span<const double> y, std::span<const double> exps) {
  const Eigen::Index m = static_cast<Eigen::Index>(x.size());
  const Eigen::Index k = static_cast<Eigen::Index>(exps.size());
  if (m < k || k == 0) throw DomainError("power_lsq needs at least as many samples as terms");
  Eigen::MatrixXd A(m, k);
  const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) A(i, j) = std::pow(x[i], -exps[j]) / y[i];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd res = A * c - rhs;
  PowerFit out;
  out.sumsq = res.squaredNorm();
  out.max_rel = res.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < k; ++j) out.terms.push_back({c[j], exps[j]});
  return out;
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double fit_leading_exponent(std::span<const double> x, std::span<const double> y, double kappa, double lo,
                            double hi) {
  auto cost = [&](double e) {
    const double exps[2] = {e, e + kappa};
    return power_lsq(x, y, exps).sumsq;
  };
  return golden_section_min(cost, lo, hi);
}


std::vector<double> linear_lsq(const std::vector<std::vector<double>>& columns, std::span<const double> y) {
  const auto m = static_cast<Eigen::Index>(y.size());
  const auto k = static_cast<Eigen::Index>(columns.size());
  if (k == 0 || m < k) throw DomainError("least squares needs at least as many samples as unknowns");
  Eigen::MatrixXd A(m, k);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    b(i) = y[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < k; ++j) A(i, j) = columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  // Column scaling keeps the QR well conditioned for mixed log/power bases.
  Eigen::VectorXd norms = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < k; ++j) A.col(j) /= norms(j);
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  std::vector<double> out(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) out[static_cast<std::size_t>(j)] = c(j) / norms(j);
  return out;
}

}  // namespace lanemden
