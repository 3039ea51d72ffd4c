#include "lanemden/ansatz.hpp"

#include <algorithm>
#include <cmath>

#include "lanemden/ball_quadrature.hpp"
#include "lanemden/errors.hpp"

namespace lanemden {

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::W1: return "W1";
    case FieldKind::W2: return "W2";
    case FieldKind::PW1Approx: return "PW1_APPROX";
    case FieldKind::PW2Approx: return "PW2_APPROX";
  }
  return "?";
}

BubblePair bubble_eval(const RadialProfile& profile, std::span<const double> xi, double delta,
                       std::span<const double> x) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (xi.size() != x.size()) throw DomainError("point dimension mismatch");
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - xi[i]) * (x[i] - xi[i]);
  const auto sc = scaling_exponents(profile.params());
  const RadialSample s = profile.evaluate(std::sqrt(d2) / delta);
  return {std::pow(delta, -sc.su) * s.U, std::pow(delta, -sc.sv) * s.V};
}

CorrectionPair make_corrections(const std::shared_ptr<const RadialProfile>& profile, double R_max) {
  CorrectionPair c;
  c.phi1 = std::make_shared<HalfSpaceCorrection>(profile, CorrectionKind::Phi1);
  c.phi2 = std::make_shared<HalfSpaceCorrection>(profile, CorrectionKind::Phi2);
  if (R_max > 0.0) {
    c.phi1->tabulate(R_max);
    c.phi2->tabulate(R_max);
  }
  return c;
}

Ansatz::Ansatz(std::shared_ptr<const RadialProfile> profile, CorrectionPair corrections, double delta)
    : profile_(std::move(profile)), corr_(std::move(corrections)), delta_(delta) {
  if (!(delta > 0.0 && delta <= 0.2)) throw DomainError("delta must lie in (0, 0.2]");
  if (!corr_.phi1 || !corr_.phi2) throw DomainError("ansatz needs both corrections");
  const auto sc = scaling_exponents(profile_->params());
  su_ = sc.su;
  sv_ = sc.sv;
  scale_u_ = std::pow(delta_, -su_);
  scale_v_ = std::pow(delta_, -sv_);
  scale_c1_ = std::pow(delta_, 1.0 - su_);
  scale_c2_ = std::pow(delta_, 1.0 - sv_);
}

AnsatzPoint Ansatz::at(double s, double t) const {
  s = std::abs(s);
  AnsatzPoint a{};
  const double inv = 1.0 / delta_;
  const RadialSample e = profile_->evaluate(std::sqrt(s * s + (t - 1.0) * (t - 1.0)) * inv);
  const RadialSample m = profile_->evaluate(std::sqrt(s * s + (t + 1.0) * (t + 1.0)) * inv);
  a.Ue = scale_u_ * e.U;
  a.Um = scale_u_ * m.U;
  a.Ve = scale_v_ * e.V;
  a.Vm = scale_v_ * m.V;
  const double sd = s * inv;
  const double hm = std::max(0.0, (1.0 - t) * inv), hp = std::max(0.0, (1.0 + t) * inv);
  a.phi1_minus = scale_c1_ * corr_.phi1->phi_fast(sd, hm);
  a.phi1_plus = scale_c1_ * corr_.phi1->phi_fast(sd, hp);
  a.phi2_minus = scale_c2_ * corr_.phi2->phi_fast(sd, hm);
  a.phi2_plus = scale_c2_ * corr_.phi2->phi_fast(sd, hp);
  a.corr1 = a.phi1_minus - a.phi1_plus;
  a.corr2 = a.phi2_minus - a.phi2_plus;
  return a;
}

double Ansatz::field(FieldKind kind, double s, double t) const {
  const AnsatzPoint a = at(s, t);
  switch (kind) {
    case FieldKind::W1: return a.W1();
    case FieldKind::W2: return a.W2();
    case FieldKind::PW1Approx: return a.PW1();
    case FieldKind::PW2Approx: return a.PW2();
  }
  return 0.0;
}

double Ansatz::field(FieldKind kind, std::span<const double> x) const {
  double s2 = 0.0, r2 = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s2 += x[i] * x[i];
  r2 = s2 + x.back() * x.back();
  if (r2 > 1.0 + 1e-12) throw DomainError("point outside the unit ball");
  return field(kind, std::sqrt(s2), x.back());
}

CompatibilityResult symmetry_and_compatibility_check(const std::function<double(double, double)>& field,
                                                     double power, const BallQuadrature& fine,
                                                     const BallQuadrature& coarse) {
  auto integrands = [&](double s, double t, double* out) {
    const double f = field(s, t);
    const double a = std::abs(f);
    out[0] = f;
    out[1] = a > 0.0 ? std::pow(a, power - 1.0) * f : 0.0;
    out[2] = a;
    out[3] = std::pow(a, power);
  };
  const auto hi = fine.integrate_many(4, integrands);
  const auto lo = coarse.integrate_many(4, integrands);
  CompatibilityResult res{hi[0], hi[1], 0.0};
  // Level difference plus rounding scale of the absolute integrals.
  const double err0 = std::abs(hi[0] - lo[0]) + 1e-13 * hi[2];
  const double err1 = std::abs(hi[1] - lo[1]) + 1e-13 * hi[3];
  res.error_estimate = std::max(err0, err1);
  const bool mean_ok = std::abs(res.mean) <= 10.0 * err0;
  const bool power_ok = std::abs(res.signed_power_mean) <= 10.0 * err1;
  if (!mean_ok || !power_ok) {
    throw QuadratureAsymmetry("odd-field integrals do not vanish: mean " + std::to_string(res.mean) +
                              ", signed power mean " + std::to_string(res.signed_power_mean));
  }
  return res;
}

}  // namespace lanemden
