#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lanemden/params.hpp"

namespace lanemden {

enum class ShotClass { UHitsZero, VHitsZero, Decaying, Diverging };

std::string to_string(ShotClass c);

/// A term c * r^{-e} of an asymptotic power series.
struct PowerTerm {
  double coef;
  double exponent;
};

double eval_terms(const std::vector<PowerTerm>& terms, double r);
/// d/dr of eval_terms.
double eval_terms_derivative(const std::vector<PowerTerm>& terms, double r);

struct ShotResult {
  ShotClass cls = ShotClass::Decaying;
  /// Radius at which the classifying event happened (r_max when DECAYING).
  double r_event = 0.0;
  /// Trajectory on the logarithmic sampling grid up to r_event.
  std::vector<double> r, U, dU, V, dV;
};

/// Integrates the radial system from the Taylor start with V(0) = v0 and
/// classifies the first event.
ShotResult shoot(const ProblemParams& params, double v0, double r_max, double tol);

/// Decay model of (U, V) beyond the sampled range.
struct TailFit {
  double a = 0.0;      ///< leading coefficient of U
  double b = 0.0;      ///< leading coefficient of V
  double exp_U = 0.0;  ///< fitted leading decay exponent of U
  double exp_V = 0.0;  ///< fitted leading decay exponent of V
  double exp_U_theory = 0.0;
  double exp_V_theory = 0.0;
  double r_lo = 0.0;
  double r_hi = 0.0;
  double fit_residual = 0.0;  ///< max relative deviation of the fixed-exponent model
  std::vector<PowerTerm> U_terms;  ///< model used for extrapolation of U
  std::vector<PowerTerm> V_terms;  ///< model used for extrapolation of V
};

struct GroundStateOptions {
  double ode_tol = 1e-12;
  double r_max = 1e4;
  double classify_r = 1e12;
  double grid_h = 0.01;   ///< spacing of the sampling grid in log r
  double r_start = 1e-3;  ///< Taylor start radius
  double divergence_guard = 1e3;
  double fit_tol = 0.05;  ///< largest accepted relative deviation of the tail model
};

struct RadialSample {
  double U, dU, V, dV;
};

/// Radial ground state sampled on a logarithmic grid, with tail model.
class RadialProfile {
 public:
  RadialProfile() = default;

  const ProblemParams& params() const { return params_; }
  double v0() const { return v0_; }
  double r_max() const { return r_max_; }
  double r_start() const { return r_start_; }
  double ode_tol() const { return ode_tol_; }
  /// Radius up to which the two bracketing trajectories agree.
  double r_valid() const { return r_valid_; }
  const TailFit& tail() const { return tail_; }
  int bisection_steps() const { return bisection_steps_; }

  /// Sampling grid including r = 0 as the first entry.
  std::vector<double> grid() const;
  std::vector<RadialSample> samples() const;

  /// (U, U', V, V') at radius r >= 0: Taylor series below the start radius,
  /// quintic Hermite interpolation in log r on the grid, tail model beyond r_max.
  RadialSample evaluate(double r) const;
  double U(double r) const { return evaluate(r).U; }
  double V(double r) const { return evaluate(r).V; }

  /// Log-grid data: t = log r, U, P = rU', dP/dt, V, Q = rV', dQ/dt.
  const std::vector<double>& t_grid() const { return t_; }
  const std::vector<double>& U_grid() const { return U_; }
  const std::vector<double>& P_grid() const { return P_; }
  const std::vector<double>& V_grid() const { return V_; }
  const std::vector<double>& Q_grid() const { return Q_; }

  /// Replaces the tail model (used by fit_tail callers that want another window).
  void set_tail(const TailFit& tail) { tail_ = tail; }

  /// Max relative residual of the first-order log-r system at grid nodes,
  /// using sixth-order central differences of the stored samples.
  double ode_residual() const;

  /// sup_r |n U/(q+1) + r U'| / U over the sampled range.
  double derivative_bound() const;

  friend RadialProfile find_ground_state(const ProblemParams&, const GroundStateOptions&);

 private:
  double hermite(const std::vector<double>& f, const std::vector<double>& df,
                 const std::vector<double>& d2f, std::size_t k, double s) const;
  void fill_second_derivatives();

  ProblemParams params_;
  double v0_ = 1.0;
  double r_max_ = 0.0;
  double r_start_ = 1e-3;
  double r_valid_ = 0.0;
  double ode_tol_ = 0.0;
  double h_ = 0.01;
  int bisection_steps_ = 0;
  std::vector<double> t_, U_, P_, Pt_, Ptt_, V_, Q_, Qt_, Qtt_;
  TailFit tail_;
};

/// Bisection on v0 between the two zero-crossing classifications; returns
/// the sampled profile with a tail fit attached.
RadialProfile find_ground_state(const ProblemParams& params, const GroundStateOptions& options = {});

/// Leading and secondary decay exponents of (U, V) predicted by the asymptotic analysis.
struct TheoryExponents {
  double U_lead, U_next, V_lead, V_next;
};
TheoryExponents theory_exponents(const ProblemParams& params);

/// Two-term power-law fit of the tail over [r_lo, r_hi]; leading exponents
/// are also fitted freely with the secondary exponent held at its theoretical value.
TailFit fit_tail(const RadialProfile& profile, double r_lo, double r_hi, double max_residual = 0.05);

/// Default fitting window: last decade, or last two decades when p < n/(n-2).
std::pair<double, double> default_fit_window(const ProblemParams& params, double r_max);

}  // namespace lanemden
