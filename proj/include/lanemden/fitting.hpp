#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lanemden/radial_ode.hpp"

namespace lanemden {

struct PowerFit {
  std::vector<PowerTerm> terms;
  double sumsq = 0.0;    ///< sum of squared relative residuals
  double max_rel = 0.0;  ///< max relative residual
};

/// Relative least squares y ~ sum_j c_j x^{-e_j} with fixed exponents.
PowerFit power_lsq(std::span<const double> x, std::span<const double> y, std::span<const double> exps);

/// Minimizer of a unimodal function on [lo, hi] by golden-section search.
double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10);

/// Least-squares slope of log|y| against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Leading exponent e of y ~ c1 x^{-e} + c2 x^{-e-kappa}, searched in [lo, hi].
double fit_leading_exponent(std::span<const double> x, std::span<const double> y, double kappa, double lo,
                            double hi);

/// Ordinary least squares y ~ sum_j c_j columns[j]; returns c.
std::vector<double> linear_lsq(const std::vector<std::vector<double>>& columns, std::span<const double> y);

}  // namespace lanemden
