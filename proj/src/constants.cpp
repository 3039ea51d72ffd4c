#include "lanemden/constants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lanemden/errors.hpp"
#include "lanemden/quadrature.hpp"

namespace lanemden {

std::string to_string(BMode m) { return m == BMode::Limit ? "limit" : "delta"; }

double EnergyConstants::identity_deviation() const { return std::abs(A1 - A2) / std::abs(A1); }

namespace {

/// (U, U', V, V') with the tail model switched on beyond r_switch.
RadialSample sample(const RadialProfile& prof, double r, double r_switch) {
  if (r <= r_switch) return prof.evaluate(r);
  const auto& t = prof.tail();
  return {eval_terms(t.U_terms, r), eval_terms_derivative(t.U_terms, r), eval_terms(t.V_terms, r),
          eval_terms_derivative(t.V_terms, r)};
}

using Integrand = std::function<double(double, const RadialSample&)>;

/// int_0^inf f(r, sample(r)) dr: geometric panels up to r_switch, then the
/// tail model in the variable log(r / r_switch).
double radial_integral(const RadialProfile& prof, const Integrand& f, double r_switch, int order) {
  std::vector<double> brk{0.0};
  for (double b : geometric_breaks(1.0 / 64.0, r_switch, std::sqrt(2.0))) brk.push_back(b);
  double sum = gauss_panels([&](double r) { return f(r, sample(prof, r, r_switch)); }, brk, order);
  auto g = [&](double sig) {
    const double r = r_switch * std::exp(sig);
    return r * f(r, sample(prof, r, r_switch));
  };
  std::vector<double> sb{0.0, 0.5, 1.0};
  for (double b = 2.0; b <= 64.0; b *= 2.0) sb.push_back(b);
  sum += gauss_panels(g, sb, order);
  return sum;
}

struct Estimate {
  double value, err;
};

/// Value with error from a second Gauss order and from switching to the tail model at r_max/2.
Estimate estimate(const RadialProfile& prof, const Integrand& f) {
  const double v = radial_integral(prof, f, prof.r_max(), 24);
  const double v_low = radial_integral(prof, f, prof.r_max(), 16);
  const double v_half = radial_integral(prof, f, 0.5 * prof.r_max(), 24);
  return {v, std::abs(v - v_low) + std::abs(v - v_half) + 1e-14 * std::abs(v)};
}

void require_decay(double integrand_exponent, const char* what) {
  if (!(integrand_exponent > 1.0)) throw TailDivergent(std::string(what) + " integral diverges at infinity");
}

}  // namespace

ADResult compute_A_D(const RadialProfile& prof) {
  const auto& pp = prof.params();
  const int n = pp.n;
  const auto th = theory_exponents(pp);
  require_decay((pp.q + 1.0) * th.U_lead - (n - 1), "A1/D1");
  require_decay((pp.p + 1.0) * th.V_lead - (n - 1), "A2/D2");
  const double area = sphere_area(n - 1);
  const double q1 = pp.q + 1.0, p1 = pp.p + 1.0;
  auto a1 = estimate(prof, [&](double r, const RadialSample& s) { return std::pow(r, n - 1) * std::pow(s.U, q1); });
  auto a2 = estimate(prof, [&](double r, const RadialSample& s) { return std::pow(r, n - 1) * std::pow(s.V, p1); });
  auto d1 = estimate(prof, [&](double r, const RadialSample& s) {
    return std::pow(r, n - 1) * std::pow(s.U, q1) * std::log(s.U);
  });
  auto d2 = estimate(prof, [&](double r, const RadialSample& s) {
    return std::pow(r, n - 1) * std::pow(s.V, p1) * std::log(s.V);
  });
  return {area * a1.value, area * a2.value, area * d1.value, area * d2.value,
          area * a1.err,   area * a2.err,   area * d1.err,   area * d2.err};
}

BResult compute_B(const RadialProfile& prof, BMode mode, double delta) {
  const auto& pp = prof.params();
  const int n = pp.n;
  const auto th = theory_exponents(pp);
  require_decay((pp.q + 1.0) * th.U_lead - n, "B1");
  require_decay((pp.p + 1.0) * th.V_lead - n, "B2");
  const double area = sphere_area(n - 2);
  const double q1 = pp.q + 1.0, p1 = pp.p + 1.0;
  if (mode == BMode::Limit) {
    auto b1 = estimate(prof, [&](double r, const RadialSample& s) { return std::pow(r, n) * std::pow(s.U, q1); });
    auto b2 = estimate(prof, [&](double r, const RadialSample& s) { return std::pow(r, n) * std::pow(s.V, p1); });
    return {0.5 * area * b1.value, 0.5 * area * b2.value, 0.5 * area * b1.err, 0.5 * area * b2.err};
  }
  if (!(delta > 0.0 && delta <= 0.1)) throw DomainError("DELTA mode needs delta in (0, 0.1]");
  // Rescaled strip: rho = delta*sigma, x_n = 1 - delta*tau,
  // B(delta) = |S^{n-2}|/delta * int_0^{sqrt(15)/(8 delta)} sigma^{n-2} int_0^{tau_max} F(|(sigma,tau)|).
  const double sig_max = std::sqrt(15.0) / (8.0 * delta);
  auto strip = [&](int order, bool first) {
    auto inner = [&](double sigma) {
      const double ds = delta * sigma;
      const double tau_max = delta * sigma * sigma / (1.0 + std::sqrt(1.0 - ds * ds));
      auto f = [&](double tau) {
        const RadialSample s = prof.evaluate(std::hypot(sigma, tau));
        return first ? std::pow(s.U, q1) : std::pow(s.V, p1);
      };
      return std::pow(sigma, n - 2) * gauss_panel(f, 0.0, tau_max, order);
    };
    std::vector<double> brk{0.0};
    for (double b : geometric_breaks(1.0 / 64.0, sig_max, std::sqrt(2.0))) brk.push_back(b);
    return area / delta * gauss_panels(inner, brk, order);
  };
  const double b1 = strip(24, true), b2 = strip(24, false);
  const double e1 = std::abs(b1 - strip(16, true)), e2 = std::abs(b2 - strip(16, false));
  return {b1, b2, e1 + 1e-14 * b1, e2 + 1e-14 * b2};
}

CResult compute_C(const RadialProfile& prof) {
  const auto& pp = prof.params();
  const int n = pp.n;
  const auto th = theory_exponents(pp);
  require_decay(th.U_lead + 1.0 + th.V_lead - (n - 1), "C");
  const double area = sphere_area(n - 2);
  auto c1 = estimate(prof, [&](double r, const RadialSample& s) { return std::pow(r, n - 1) * s.dU * s.V; });
  auto c2 = estimate(prof, [&](double r, const RadialSample& s) { return std::pow(r, n - 1) * s.dV * s.U; });
  return {-area * c1.value, -area * c2.value, area * c1.err, area * c2.err};
}

EnergyConstants compute_constants(const RadialProfile& profile, BMode mode, double delta) {
  const auto ad = compute_A_D(profile);
  const auto b = compute_B(profile, mode, delta);
  const auto c = compute_C(profile);
  EnergyConstants k;
  k.A1 = ad.A1;
  k.A2 = ad.A2;
  k.D1 = ad.D1;
  k.D2 = ad.D2;
  k.err_A1 = ad.err_A1;
  k.err_A2 = ad.err_A2;
  k.err_D1 = ad.err_D1;
  k.err_D2 = ad.err_D2;
  k.B1 = b.B1;
  k.B2 = b.B2;
  k.err_B1 = b.err_B1;
  k.err_B2 = b.err_B2;
  k.C1 = c.C1;
  k.C2 = c.C2;
  k.err_C1 = c.err_C1;
  k.err_C2 = c.err_C2;
  k.b_mode = mode;
  k.delta_used = mode == BMode::Delta ? delta : 0.0;
  return k;
}

}  // namespace lanemden
