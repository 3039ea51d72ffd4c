#include "lanemden/reduced_energy.hpp"

#include <cmath>

#include "lanemden/errors.hpp"
#include "lanemden/fitting.hpp"

namespace lanemden {

ReducedEnergy::ReducedEnergy(const EnergyConstants& constants, int n, double p, double q, double alpha, double beta)
    : k_(constants), n_(n), p_(p), q_(q), alpha_(alpha), beta_(beta) {
  if (!(linear_coefficient() > 0.0)) throw DomainError("linear coefficient of G must be positive");
}

ReducedEnergy::ReducedEnergy(const EnergyConstants& constants, const ProblemParams& params)
    : ReducedEnergy(constants, params.n, params.p, params.q, params.alpha, params.beta) {}

double ReducedEnergy::constant_term() const {
  const double p1 = p_ + 1.0, q1 = q_ + 1.0;
  return (alpha_ * k_.A1 / p1 - alpha_ * k_.D1) / p1 + (beta_ * k_.A2 / q1 - beta_ * k_.D2) / q1;
}

double ReducedEnergy::log_coefficient() const {
  const double p1 = p_ + 1.0, q1 = q_ + 1.0;
  return (n_ * alpha_ / (p1 * p1) + n_ * beta_ / (q1 * q1)) * k_.A1;
}

double ReducedEnergy::linear_coefficient() const {
  return (1.0 - 2.0 / (p_ + 1.0)) * k_.B2 + (1.0 - 2.0 / (q_ + 1.0)) * k_.B1 + 0.5 * (k_.C1 + k_.C2);
}

double ReducedEnergy::G(double d) const {
  if (!(d > 0.0)) throw DomainError("G needs d > 0");
  return constant_term() + log_coefficient() * std::log(d) - linear_coefficient() * d;
}

double ReducedEnergy::G_prime(double d) const {
  if (!(d > 0.0)) throw DomainError("G needs d > 0");
  return log_coefficient() / d - linear_coefficient();
}

double ReducedEnergy::G_second(double d) const {
  if (!(d > 0.0)) throw DomainError("G needs d > 0");
  return -log_coefficient() / (d * d);
}

double ReducedEnergy::d_star() const {
  if (!(log_coefficient() > 0.0)) throw DomainError("d* needs alpha or beta positive");
  return log_coefficient() / linear_coefficient();
}

double ReducedEnergy::d_star_golden(double tol) const {
  const double guess = d_star();
  const double x = golden_section_min([&](double s) { return -G(std::exp(s)); }, std::log(guess) - 5.0,
                                      std::log(guess) + 5.0, tol);
  return std::exp(x);
}

double ReducedEnergy::d_star_bisection(double tol) const {
  double lo = std::log(d_star()) - 20.0, hi = std::log(d_star()) + 20.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (G_prime(std::exp(mid)) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

double ReducedEnergy::eta_window() const {
  const double d = d_star();
  return 0.25 * std::min(d, 1.0 / d);
}

ReducedEnergy::Expansion ReducedEnergy::J_expansion(double epsilon, double d) const {
  if (!(epsilon > 0.0 && epsilon <= 0.1)) throw DomainError("epsilon must lie in (0, 0.1]");
  return {leading(), log_coefficient() * epsilon * std::log(epsilon), G(d) * epsilon};
}

}  // namespace lanemden
