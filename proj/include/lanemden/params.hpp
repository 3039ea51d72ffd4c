#pragma once

#include <string>
#include <string_view>

namespace lanemden {

/// Position of p relative to n/(n-2); decides the decay law of U.
enum class ExponentCase { Super, Sub, Border };

enum class ConditionP { CaseI, CaseII, Outside };

std::string to_string(ExponentCase c);
std::string to_string(ConditionP c);

/// Exponents on the critical hyperbola 1/(p+1) + 1/(q+1) = (n-2)/n together
/// with the slopes of the slightly supercritical perturbation
/// p_eps = p + alpha*eps, q_eps = q + beta*eps.
///
/// q is always derived from (n, p); use on_hyperbola() to construct.
struct ProblemParams {
  int n = 4;
  double p = 3.0;
  double q = 3.0;
  double alpha = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
  ExponentCase case_tag = ExponentCase::Super;

  static ProblemParams on_hyperbola(int n, double p, double alpha = 0.0, double beta = 0.0,
                                    double epsilon = 0.0);

  double p_eps() const { return p + alpha * epsilon; }
  double q_eps() const { return q + beta * epsilon; }

  /// 1/(p+1) + 1/(q+1) - (n-2)/n
  double hyperbola_residual() const;

  /// n/(n-2)
  double border_exponent() const { return static_cast<double>(n) / (n - 2); }
  /// (n+2)/(n-2)
  double sobolev_exponent() const { return static_cast<double>(n + 2) / (n - 2); }
  bool is_symmetric_point() const;
};

/// q with 1/(p+1) + 1/(q+1) = (n-2)/n. Throws DomainError when no positive q exists.
double critical_exponent(int n, double p);

/// p_n = (2n+1+sqrt((2n+1)^2-24(n-2)))/(4(n-2)), the lower end of case (ii).
double lower_threshold_pn(int n);

struct ConditionPResult {
  ConditionP label;
  double p_n;
};

ConditionPResult check_condition_p(const ProblemParams& params);

/// Bubble scaling exponents: U_{xi,delta} = delta^{-su} U((y-xi)/delta),
/// V_{xi,delta} = delta^{-sv} V((y-xi)/delta).
struct ScalingExponents {
  double su;
  double sv;
};

ScalingExponents scaling_exponents(const ProblemParams& params);

/// Parses "2.5", "11/3" or "7/3". Fractions are evaluated as a single
/// division of the two parsed integers/decimals.
double parse_exponent(std::string_view text);

/// Throws DomainError unless the parameters are usable by the radial solver:
/// either condition (P) holds or p = q = (n+2)/(n-2); the border case is rejected.
void require_solvable(const ProblemParams& params);

}  // namespace lanemden
