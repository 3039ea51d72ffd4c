#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lanemden/errors.hpp"
#include "lanemden/verify.hpp"

using namespace lanemden;
using std::numbers::pi;

namespace {

std::shared_ptr<const RadialProfile> profile3() {
  static auto p = std::make_shared<const RadialProfile>(find_ground_state(ProblemParams::on_hyperbola(4, 3.0)));
  return p;
}

}  // namespace

TEST_CASE("metric rules") {
  CHECK(relative_metric("a", 1.04, 1.0, 0.05).pass);
  CHECK_FALSE(relative_metric("a", 1.06, 1.0, 0.05).pass);
  CHECK(absolute_metric("b", 0.01, 0.0, 0.02).pass);
  CHECK(at_least_metric("c", 1.5, 1.5).pass);
  CHECK_FALSE(at_least_metric("c", 1.49, 1.5).pass);
  CHECK(at_most_metric("d", 0.9, 1.0).pass);
  CHECK_FALSE(at_most_metric("d", std::nan(""), 1.0).pass);

  ExpansionReport rep;
  rep.metrics = {relative_metric("x", 1.0, 1.0, 0.1), at_most_metric("y", 2.0, 1.0)};
  rep.finalize();
  CHECK_FALSE(rep.pass);
  CHECK(rep.metric("x").pass);
  CHECK_THROWS_AS(rep.metric("z"), DomainError);
}

TEST_CASE("extrapolation helpers") {
  // S(delta) = 3 - 7 delta is recovered exactly.
  CHECK(richardson(0.01, 3 - 0.07, 0.02, 3 - 0.14) == doctest::Approx(3.0).epsilon(1e-14));
  const std::vector<double> d{0.04, 0.02, 0.01}, v{0.0016, 0.0004, 0.0001};
  for (double r : halving_ratios(d, v)) CHECK(r == doctest::Approx(4.0));
  // Quartering counts as two halvings.
  const auto r = halving_ratios({0.04, 0.01}, {0.0016, 0.0001});
  CHECK(r.at(0) == doctest::Approx(4.0));
}

TEST_CASE("scaling integral against a closed form") {
  // n = 4, p = 3, u1 row at t = 1: |S^3| delta^3 int_0^X rho^3/(1+rho^2) = pi^2 delta^3 (X^2 - log(1+X^2)).
  const auto pp = ProblemParams::on_hyperbola(4, 3.0);
  for (double delta : {0.04, 0.01}) {
    const double X = 0.5 / delta;
    const double ref = pi * pi * std::pow(delta, 3) * (X * X - std::log1p(X * X));
    CHECK(scaling_integral(pp, ScalingRow::U1, 1.0, delta) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK(scaling_expectation(pp, ScalingRow::U1, 2.0).regime == "critical");
  CHECK(scaling_expectation(pp, ScalingRow::U1, 4.0).regime == "above");
  CHECK(parse_scaling_row("v1_tilde") == ScalingRow::V1Tilde);
  CHECK_THROWS_AS(parse_scaling_row("w3"), DomainError);
}

TEST_CASE("scaling rows reproduce their exponents") {
  const auto pp = ProblemParams::on_hyperbola(4, 3.0);
  CHECK(check_scaling_table(pp, ScalingRow::U1, 4.0).pass);
  CHECK(check_scaling_table(pp, ScalingRow::U1, 1.0).pass);
  CHECK(check_scaling_table(pp, ScalingRow::V2, 2.0).pass);
}

TEST_CASE("f Taylor remainder") {
  // Direct evaluation of |t|^{e+s} - |t|^e - s |t|^e log|t| at a single t.
  const double e = 3.0, eps = 0.01, t = std::numbers::e, s = eps;
  const double direct = std::pow(t, e + s) - std::pow(t, e) - s * std::pow(t, e) * std::log(t);
  const double bound = 0.5 * (std::pow(t, e) + std::pow(t, e + s)) * std::pow(std::log(t), 2);
  const auto r = f_taylor_ratios(e, 1.0, {t}, eps);
  CHECK(r.xi_ratio == doctest::Approx(std::abs(direct) / (eps * eps) / bound).epsilon(1e-6));
  CHECK(std::abs(direct) / (eps * eps) <= bound);
  CHECK(f_taylor_ratios(e, 0.0, default_t_samples(), eps).xi_ratio == 0.0);
  CHECK(check_f_taylor(ProblemParams::on_hyperbola(4, 3.0, 1.0, 1.0), default_t_samples(), {0.1, 0.01}).pass);
  CHECK_THROWS_AS(f_taylor_ratios(e, 1.0, {0.0}, eps), DomainError);
}

TEST_CASE("kernel of the linearized system") {
  CHECK(kernel_residual_closed_form(4) < 1e-6);
  CHECK(kernel_residual_closed_form(6) < 1e-6);
  const auto rep = check_kernel(*profile3());
  CHECK(rep.pass);
}

TEST_CASE("cross terms shrink faster than delta") {
  const auto ctx = make_verify_context(profile3(), compute_constants(*profile3()), 0.0025);
  const auto rep = check_cross_terms(ctx, {0.04, 0.02, 0.01});
  CHECK(rep.pass);
  CHECK_THROWS_AS(check_cross_terms(ctx, {0.01, 0.02}), DomainError);
}

TEST_CASE("unperturbed nonlinearity has zero norms") {
  // profile3 carries alpha = beta = 0, so f_eps = f_0.
  const auto ctx = make_verify_context(profile3(), compute_constants(*profile3()), 0.0025);
  const auto rep = check_norm_orders(ctx, {0.025, 0.0125}, 0.2);
  CHECK(rep.pass);
  for (const auto& m : rep.metrics) CHECK(m.measured == 0.0);
}
