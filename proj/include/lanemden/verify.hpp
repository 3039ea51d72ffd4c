#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lanemden/ansatz.hpp"
#include "lanemden/constants.hpp"
#include "lanemden/radial_ode.hpp"

namespace lanemden {

/// One pass/fail comparison inside a report.
struct Metric {
  std::string name;
  std::string rule;  ///< "relative", "absolute", "at_least", "at_most"
  double measured = 0.0;
  double target = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Metric relative_metric(std::string name, double measured, double target, double tolerance);
Metric absolute_metric(std::string name, double measured, double target, double tolerance);
Metric at_least_metric(std::string name, double measured, double bound);
Metric at_most_metric(std::string name, double measured, double bound);

struct ExpansionReport {
  std::string name;
  std::string sample_label;  ///< "delta", "epsilon", "t", ...
  std::vector<double> samples;
  std::vector<std::pair<std::string, std::vector<double>>> series;
  std::vector<Metric> metrics;
  bool pass = false;

  void add_series(std::string label, std::vector<double> values);
  const std::vector<double>& get_series(const std::string& label) const;
  const Metric& metric(const std::string& label) const;
  /// Sets pass from the metrics.
  void finalize();
};

/// Everything the ball-integral checks share.
struct VerifyContext {
  std::shared_ptr<const RadialProfile> profile;
  EnergyConstants constants;
  CorrectionPair corrections;
  int level = 1;
  /// Relative level-to-level change above which quadrature is declared non-convergent.
  double quad_tol = 1e-3;
};

/// Builds the context with correction tables covering delta >= delta_min.
VerifyContext make_verify_context(std::shared_ptr<const RadialProfile> profile, const EnergyConstants& constants,
                                  double delta_min, int level = 1, double quad_tol = 1e-3);

/// Linear extrapolation of S(delta) to delta = 0 from the two smallest samples.
double richardson(double delta1, double S1, double delta2, double S2);

/// Ratio of consecutive values normalized to a halving of delta.
std::vector<double> halving_ratios(const std::vector<double>& deltas, const std::vector<double>& values);

ExpansionReport check_boundary_loss(const VerifyContext& ctx, const std::vector<double>& deltas);
ExpansionReport check_cross_terms(const VerifyContext& ctx, const std::vector<double>& deltas);
ExpansionReport check_phi_pairing(const VerifyContext& ctx, const std::vector<double>& deltas);
ExpansionReport check_gradient_expansion(const VerifyContext& ctx, const std::vector<double>& deltas);

enum class NonlinearSide { P, Q };

/// Nonlinear energy at delta = d*eps (and 2*d*eps); compares the perturbation
/// addends, isolated by a central difference in the exponent shift, and the remainder.
ExpansionReport check_nonlinear_expansion(const VerifyContext& ctx, const std::vector<double>& eps_list,
                                          double d = 0.2, NonlinearSide side = NonlinearSide::P);

/// Order in epsilon of the nonlinearity perturbation norms at delta = d*eps.
ExpansionReport check_norm_orders(const VerifyContext& ctx, const std::vector<double>& eps_list, double d = 0.2);

/// Residuals of the dilation kernel of the linearized system.
struct KernelResiduals {
  double finite_difference = 0.0;  ///< FD Laplacian of the sampled kernel
  double ode_derivatives = 0.0;    ///< derivatives taken from the ODE itself
  double translation = 0.0;        ///< FD check of the translation kernel
};
KernelResiduals kernel_residuals(const RadialProfile& profile);
/// Residual of the dilation kernel of the explicit bubble at the symmetric point, analytic derivatives.
double kernel_residual_closed_form(int n, double r_max = 1e3, int samples = 2000);
ExpansionReport check_kernel(const RadialProfile& profile);

enum class ScalingRow { U1, U1Tilde, U2, V1, V1Tilde, V2 };
std::string to_string(ScalingRow row);
ScalingRow parse_scaling_row(const std::string& text);

struct ScalingExpectation {
  std::string regime;  ///< "below", "critical", "above"
  double exponent;
  bool log_corrected;
};
ScalingExpectation scaling_expectation(const ProblemParams& params, ScalingRow row, double t);
/// Integral of the row's model function to the power t over B_R(xi).
double scaling_integral(const ProblemParams& params, ScalingRow row, double t, double delta, double R = 0.5);
ExpansionReport check_scaling_table(const ProblemParams& params, ScalingRow row, double t,
                                    const std::vector<double>& deltas = {0.04, 0.02, 0.01});

/// Max ratio of the second-order remainders of f and f' to their bounds.
struct FTaylorResult {
  double xi_ratio = 0.0;
  double eta_ratio = 0.0;
};
FTaylorResult f_taylor_ratios(double exponent, double shift, const std::vector<double>& t_samples, double epsilon);
ExpansionReport check_f_taylor(const ProblemParams& params, const std::vector<double>& t_samples,
                               const std::vector<double>& eps_list);

/// Default t grid: +-[0.1, 10], log spaced.
std::vector<double> default_t_samples(int per_sign = 201);

}  // namespace lanemden
