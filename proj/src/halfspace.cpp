#include "lanemden/halfspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lanemden/errors.hpp"
#include "lanemden/fitting.hpp"
#include "lanemden/parallel.hpp"
#include "lanemden/quadrature.hpp"

namespace lanemden {

std::string to_string(CorrectionKind k) { return k == CorrectionKind::Phi1 ? "PHI1" : "PHI2"; }

namespace {

constexpr int kOrder = 20;
constexpr int kCheckOrder = 12;

BoundaryData profile_data(const std::shared_ptr<const RadialProfile>& prof, CorrectionKind which) {
  BoundaryData d;
  const bool first = which == CorrectionKind::Phi1;
  d.g = [prof, first](double rho) {
    const RadialSample s = prof->evaluate(rho);
    return -0.5 * rho * (first ? s.dU : s.dV);
  };
  const auto& terms = first ? prof->tail().U_terms : prof->tail().V_terms;
  for (const auto& t : terms) d.tail.push_back({0.5 * t.exponent * t.coef, t.exponent});
  d.r_switch = prof->r_max();
  return d;
}

}  // namespace

HalfSpaceCorrection::HalfSpaceCorrection(std::shared_ptr<const RadialProfile> profile, CorrectionKind which)
    : HalfSpaceCorrection(profile->params().n, profile_data(profile, which)) {
  kind_ = which;
  profile_ = std::move(profile);
}

HalfSpaceCorrection::HalfSpaceCorrection(int n, BoundaryData data) : n_(n), data_(std::move(data)) {
  if (n_ < 4) throw DomainError("half-space correction needs n >= 4");
  if (data_.tail.empty()) throw DomainError("boundary data needs a tail model");
  for (const auto& t : data_.tail) {
    if (t.coef != 0.0 && !(t.exponent > 1.0)) {
      throw TailDivergent("boundary data decays too slowly for the Poisson integral");
    }
  }
  prefactor_ = -2.0 / (sphere_area(n_ - 1) * (n_ - 2));
}

double HalfSpaceCorrection::data_decay_exponent() const {
  double e = 1e300;
  for (const auto& t : data_.tail) {
    if (t.coef != 0.0) e = std::min(e, t.exponent);
  }
  return e;
}

double HalfSpaceCorrection::angular_kernel_quadrature(double s, double rho, double h) const {
  const double A = s * s + rho * rho + h * h;
  const double B = 2.0 * s * rho;
  const double amb = (s - rho) * (s - rho) + h * h;
  const double half = 0.5 * (n_ - 2);
  if (B <= 1e-8 * A) return sphere_area(n_ - 2) * std::pow(A, -half);
  // u = sin(psi/2) in [0, 1/2] with u = lambda sinh(tau); psi in [pi/3, pi] directly.
  const double lambda = std::sqrt(amb / (2.0 * B));
  const double tau_max = std::asinh(0.5 / lambda);
  auto f_tau = [&](double tau) {
    const double u = lambda * std::sinh(tau);
    return std::pow(std::tanh(tau), n_ - 3) * std::pow(1.0 - u * u, 0.5 * (n_ - 4));
  };
  const int panels = std::max(1, static_cast<int>(std::ceil(tau_max)));
  double part_tau = 0.0;
  for (int k = 0; k < panels; ++k) {
    part_tau += gauss_panel(f_tau, tau_max * k / panels, tau_max * (k + 1) / panels, 16);
  }
  part_tau *= std::pow(2.0, n_ - 2) * std::pow(2.0 * B, -half);
  auto f_psi = [&](double psi) {
    const double sh = std::sin(0.5 * psi);
    return std::pow(std::sin(psi), n_ - 3) * std::pow(amb + 2.0 * B * sh * sh, -half);
  };
  const double pi = std::numbers::pi;
  const double part_psi = gauss_panel(f_psi, pi / 3.0, 2.0 * pi / 3.0, 24) + gauss_panel(f_psi, 2.0 * pi / 3.0, pi, 24);
  return sphere_area(n_ - 3) * (part_tau + part_psi);
}

double HalfSpaceCorrection::angular_kernel(double s, double rho, double h) const {
  const double A = s * s + rho * rho + h * h;
  const double B = 2.0 * s * rho;
  if (B <= 1e-8 * A) return sphere_area(n_ - 2) * std::pow(A, -0.5 * (n_ - 2));
  if (n_ == 4) {
    const double amb = (s - rho) * (s - rho) + h * h;
    return 2.0 * std::numbers::pi / B * std::log1p(2.0 * B / amb);
  }
  return angular_kernel_quadrature(s, rho, h);
}

double HalfSpaceCorrection::integrate(double s, double h, int order) const {
  const double R = std::hypot(s, h);
  const double rho_far = std::max(1e3 * std::max(R, 1.0), 10.0 * data_.r_switch);
  std::vector<double> pts{0.0, rho_far};
  for (double b = 1.0 / 64.0; b < rho_far; b *= 2.0) pts.push_back(b);
  if (data_.r_switch < rho_far) pts.push_back(data_.r_switch);
  if (s > 0.0) {
    pts.push_back(s);
    const double w0 = std::max(0.5 * h, 1e-9 * s);
    for (double w = w0; w < 2.0 * std::max(s, 1.0); w *= 2.0) {
      if (s - w > 0.0) pts.push_back(s - w);
      pts.push_back(s + w);
    }
  } else if (h > 0.0) {
    for (double w = 0.25 * h; w < 2.0; w *= 2.0) pts.push_back(w);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> brk;
  for (double x : pts) {
    if (x > rho_far) continue;
    if (brk.empty() || x - brk.back() > 1e-14 * std::max(1.0, x)) brk.push_back(x);
  }
  if (brk.back() < rho_far) brk.push_back(rho_far);
  auto f = [&](double rho) { return std::pow(rho, n_ - 2) * data_.g(rho) * angular_kernel(s, rho, h); };
  double sum = gauss_panels(f, brk, order);
  double tail = 0.0;
  for (const auto& t : data_.tail) tail += t.coef * std::pow(rho_far, 1.0 - t.exponent) / (t.exponent - 1.0);
  sum += sphere_area(n_ - 2) * tail;
  return prefactor_ * sum;
}

double HalfSpaceCorrection::phi(double s, double h) const {
  if (h < 0.0) throw DomainError("phi is defined on the closed upper half-space only");
  return integrate(std::abs(s), h, kOrder);
}

double HalfSpaceCorrection::phi(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw DomainError("point dimension mismatch");
  double s2 = 0.0;
  for (int i = 0; i + 1 < n_; ++i) s2 += x[i] * x[i];
  return phi(std::sqrt(s2), x[n_ - 1]);
}

double HalfSpaceCorrection::phi_checked(double s, double h, double rel_tol, double* err) const {
  if (h < 0.0) throw DomainError("phi is defined on the closed upper half-space only");
  const double fine = integrate(std::abs(s), h, kOrder);
  const double coarse = integrate(std::abs(s), h, kCheckOrder);
  const double e = std::abs(fine - coarse);
  if (err) *err = e;
  if (e > rel_tol * std::abs(fine)) {
    throw QuadratureNonConvergent("phi quadrature error " + std::to_string(e) + " above tolerance");
  }
  return fine;
}

void HalfSpaceCorrection::tabulate(double R_max) {
  if (!(R_max > 0.0)) throw DomainError("table radius must be positive");
  du_ = 0.02;
  nth_ = 49;
  dth_ = 0.5 * std::numbers::pi / (nth_ - 1);
  nu_ = static_cast<int>(std::ceil(std::log1p(R_max) / du_)) + 4;
  std::vector<double> values(static_cast<std::size_t>(nu_) * nth_);
  const auto rows = parallel_chunks(static_cast<std::size_t>(nu_) * nth_, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / nth_;
    const int j = static_cast<int>(idx) % nth_;
    const double R = std::expm1(i * du_);
    const double th = j * dth_;
    return phi(R * std::sin(th), std::max(0.0, R * std::cos(th)));
  });
  table_ = rows;
  table_R_ = std::expm1((nu_ - 4) * du_);
}

namespace {

void lagrange6(double x, double w[6]) {
  for (int k = 0; k < 6; ++k) {
    double num = 1.0, den = 1.0;
    for (int m = 0; m < 6; ++m) {
      if (m == k) continue;
      num *= x - m;
      den *= k - m;
    }
    w[k] = num / den;
  }
}

}  // namespace

double HalfSpaceCorrection::phi_fast(double s, double h) const {
  s = std::abs(s);
  const double R = std::hypot(s, h);
  if (table_.empty() || R > table_R_) return phi(s, h);
  const double u = std::log1p(R) / du_;
  const double th = std::atan2(s, h) / dth_;
  int i0 = static_cast<int>(std::floor(u)) - 2;
  i0 = std::clamp(i0, 0, nu_ - 6);
  int j0 = static_cast<int>(std::floor(th)) - 2;
  j0 = std::min(j0, nth_ - 6);
  double wu[6], wt[6];
  lagrange6(u - i0, wu);
  lagrange6(th - j0, wt);
  double sum = 0.0;
  for (int a = 0; a < 6; ++a) {
    const double* row = &table_[static_cast<std::size_t>(i0 + a) * nth_];
    double inner = 0.0;
    // Even in the angle: negative indices reflect across the axis.
    for (int b = 0; b < 6; ++b) inner += wt[b] * row[std::abs(j0 + b)];
    sum += wu[a] * inner;
  }
  return sum;
}

DecayFit fit_phi_decay(const HalfSpaceCorrection& corr, double R_lo, double R_hi, double theta) {
  if (!(R_hi > R_lo && R_lo > 0.0)) throw DomainError("bad decay window");
  DecayFit fit;
  const int m = 11;
  for (int i = 0; i < m; ++i) {
    const double R = R_lo * std::pow(R_hi / R_lo, static_cast<double>(i) / (m - 1));
    fit.radii.push_back(R);
    fit.values.push_back(std::abs(corr.phi(R * std::sin(theta), R * std::cos(theta))));
  }
  std::vector<double> exps;
  for (const auto& t : corr.data().tail) {
    if (t.coef != 0.0) exps.push_back(t.exponent);
  }
  std::sort(exps.begin(), exps.end());
  const double kappa = exps.size() > 1 ? std::min(1.0, exps[1] - exps[0]) : 1.0;
  fit.expected = corr.expected_phi_decay();
  fit.exponent = fit_leading_exponent(fit.radii, fit.values, kappa, fit.expected - 0.5, fit.expected + 0.5);
  fit.rel_deviation = std::abs(fit.exponent - fit.expected) / fit.expected;
  return fit;
}

double verify_harmonic(const HalfSpaceCorrection& corr, double lo, double hi, double zlo, double zhi, double h,
                       int points_per_axis) {
  const int n = corr.dimension();
  if (zlo < 2.0 * h) throw DomainError("sample box must stay 2h away from the boundary");
  const int m = std::max(1, points_per_axis);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(m);
  auto coord = [m](double a, double b, int k) { return m == 1 ? 0.5 * (a + b) : a + (b - a) * k / (m - 1); };
  const auto res = parallel_chunks(total, [&](std::size_t idx) {
    std::vector<double> x(n);
    std::size_t rest = idx;
    for (int i = 0; i < n; ++i) {
      const int k = static_cast<int>(rest % m);
      rest /= m;
      x[i] = i + 1 < n ? coord(lo, hi, k) : coord(zlo, zhi, k);
    }
    const double center = corr.phi(x);
    double lap = 0.0;
    for (int i = 0; i < n; ++i) {
      std::vector<double> xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      lap += corr.phi(xp) + corr.phi(xm) - 2.0 * center;
    }
    return std::abs(lap) / (h * h);
  });
  return *std::max_element(res.begin(), res.end());
}

double verify_neumann_data(const HalfSpaceCorrection& corr, std::span<const double> radii, double h) {
  double worst = 0.0;
  for (double rho : radii) {
    const double f0 = corr.phi(rho, 0.0), f1 = corr.phi(rho, h), f2 = corr.phi(rho, 2.0 * h);
    const double dn = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
    const double target = corr.g(rho);
    worst = std::max(worst, std::abs(dn - target) / std::abs(target));
  }
  return worst;
}

}  // namespace lanemden
