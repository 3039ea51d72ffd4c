#pragma once

#include "lanemden/constants.hpp"
#include "lanemden/params.hpp"

namespace lanemden {

/// G(d) = (1/(p+1))(alpha A1/(p+1) - alpha D1) + (1/(q+1))(beta A2/(q+1) - beta D2)
///        + kappa A1 log d - lambda d,
/// kappa = n alpha/(p+1)^2 + n beta/(q+1)^2,
/// lambda = (1-2/(p+1)) B2 + (1-2/(q+1)) B1 + (C1+C2)/2.
class ReducedEnergy {
 public:
  ReducedEnergy(const EnergyConstants& constants, int n, double p, double q, double alpha, double beta);
  ReducedEnergy(const EnergyConstants& constants, const ProblemParams& params);

  const EnergyConstants& constants() const { return k_; }
  double G(double d) const;
  double G_prime(double d) const;
  double G_second(double d) const;

  double constant_term() const;
  /// Coefficient of log d in G, and of eps log eps in J.
  double log_coefficient() const;
  /// Coefficient of -d in G.
  double linear_coefficient() const;
  double leading() const { return 2.0 / n_ * k_.A1; }

  /// Closed-form critical point log_coefficient / linear_coefficient.
  double d_star() const;
  /// Maximizer of G found by golden-section search in log d.
  double d_star_golden(double tol = 1e-13) const;
  /// Root of G' by bisection in log d.
  double d_star_bisection(double tol = 1e-12) const;
  /// eta with d* in (2 eta, 1/(2 eta)).
  double eta_window() const;

  struct Expansion {
    double leading, eps_log_eps_term, eps_term;
  };
  Expansion J_expansion(double epsilon, double d) const;

 private:
  EnergyConstants k_;
  int n_;
  double p_, q_, alpha_, beta_;
};

}  // namespace lanemden
