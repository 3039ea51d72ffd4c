#include "lanemden/params.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "lanemden/errors.hpp"

namespace lanemden {

std::string to_string(ExponentCase c) {
  switch (c) {
    case ExponentCase::Super: return "SUPER";
    case ExponentCase::Sub: return "SUB";
    case ExponentCase::Border: return "BORDER";
  }
  return "?";
}

std::string to_string(ConditionP c) {
  switch (c) {
    case ConditionP::CaseI: return "case (i)";
    case ConditionP::CaseII: return "case (ii)";
    case ConditionP::Outside: return "outside";
  }
  return "?";
}

double critical_exponent(int n, double p) {
  if (n < 3) throw DomainError("dimension must be at least 3");
  if (!(p > 0.0)) throw DomainError("exponent p must be positive");
  const double rhs = static_cast<double>(n - 2) / n - 1.0 / (p + 1.0);
  if (!(rhs > 0.0)) throw DomainError("no positive q on the critical hyperbola for this p");
  return 1.0 / rhs - 1.0;
}

double lower_threshold_pn(int n) {
  const double a = 2.0 * n + 1.0;
  return (a + std::sqrt(a * a - 24.0 * (n - 2))) / (4.0 * (n - 2));
}

ProblemParams ProblemParams::on_hyperbola(int n, double p, double alpha, double beta,
                                          double epsilon) {
  if (n < 4) throw DomainError("dimension n must be at least 4");
  if (!(p > 1.0)) throw DomainError("exponent p must exceed 1");
  const double sob = static_cast<double>(n + 2) / (n - 2);
  if (p > sob * (1.0 + 1e-14)) throw DomainError("exponent p exceeds (n+2)/(n-2); p <= q is required");
  if (alpha < 0.0 || beta < 0.0) throw DomainError("alpha and beta must be nonnegative");
  if (epsilon < 0.0) throw DomainError("epsilon must be nonnegative");
  ProblemParams out;
  out.n = n;
  out.p = p;
  out.q = critical_exponent(n, p);
  out.alpha = alpha;
  out.beta = beta;
  out.epsilon = epsilon;
  const double border = static_cast<double>(n) / (n - 2);
  if (std::abs(p - border) <= 1e-12 * border) {
    out.case_tag = ExponentCase::Border;
  } else {
    out.case_tag = p > border ? ExponentCase::Super : ExponentCase::Sub;
  }
  return out;
}

double ProblemParams::hyperbola_residual() const {
  return 1.0 / (p + 1.0) + 1.0 / (q + 1.0) - static_cast<double>(n - 2) / n;
}

bool ProblemParams::is_symmetric_point() const {
  return std::abs(p - sobolev_exponent()) <= 1e-12 * sobolev_exponent();
}

ConditionPResult check_condition_p(const ProblemParams& params) {
  const double pn = lower_threshold_pn(params.n);
  const double border = params.border_exponent();
  const double sob = params.sobolev_exponent();
  ConditionP label = ConditionP::Outside;
  if (params.p > border && params.p < sob && params.case_tag == ExponentCase::Super) {
    label = ConditionP::CaseI;
  } else if (params.p > pn && params.p < border && params.case_tag == ExponentCase::Sub) {
    label = ConditionP::CaseII;
  }
  return {label, pn};
}

ScalingExponents scaling_exponents(const ProblemParams& params) {
  return {params.n / (params.q + 1.0), params.n / (params.p + 1.0)};
}

namespace {

double parse_number(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw DomainError("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

double parse_exponent(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_number(text);
  const double num = parse_number(text.substr(0, slash));
  const double den = parse_number(text.substr(slash + 1));
  if (den == 0.0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

void require_solvable(const ProblemParams& params) {
  if (params.case_tag == ExponentCase::Border) {
    throw DomainError("BORDER case p = n/(n-2) rejected");
  }
  if (params.is_symmetric_point()) return;
  const auto cp = check_condition_p(params);
  if (cp.label == ConditionP::Outside) {
    throw DomainError("p = " + std::to_string(params.p) + " is outside condition (P) (p_n = " +
                      std::to_string(cp.p_n) + ")");
  }
}

}  // namespace lanemden
