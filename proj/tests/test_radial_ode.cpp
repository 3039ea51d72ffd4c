#include <cmath>

#include "doctest.h"
#include "lanemden/errors.hpp"
#include "lanemden/radial_ode.hpp"

using namespace lanemden;

namespace {

// Explicit bubble (1 + r^2/(n(n-2)))^{-(n-2)/2} and its derivative.
double bubble(int n, double r) { return std::pow(1.0 + r * r / (n * (n - 2.0)), -(n - 2.0) / 2.0); }
double bubble_dr(int n, double r) {
  const double k = n * (n - 2.0);
  return -(n - 2.0) / k * r * std::pow(1.0 + r * r / k, -n / 2.0);
}

const RadialProfile& profile_at(int n, double p) {
  static const RadialProfile p4 = find_ground_state(ProblemParams::on_hyperbola(4, 3.0));
  static const RadialProfile p5 = find_ground_state(ProblemParams::on_hyperbola(5, 7.0 / 3.0));
  static const RadialProfile p19 = find_ground_state(ProblemParams::on_hyperbola(4, 1.9));
  if (n == 5) return p5;
  return p < 2.0 ? p19 : p4;
}

}  // namespace

TEST_CASE("symmetric point reproduces the explicit bubble") {
  for (int n : {4, 5}) {
    const auto& prof = profile_at(n, n == 4 ? 3.0 : 7.0 / 3.0);
    CHECK(std::abs(prof.v0() - 1.0) < 1e-6);
    double worst = 0.0, worst_d = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double r = 0.01 * i;
      const auto s = prof.evaluate(r);
      worst = std::max({worst, std::abs(s.U / bubble(n, r) - 1.0), std::abs(s.V / bubble(n, r) - 1.0)});
      if (r > 0.0) worst_d = std::max(worst_d, std::abs(s.dU / bubble_dr(n, r) - 1.0));
    }
    CHECK(worst < 1e-6);
    CHECK(worst_d < 1e-6);
    // Tail coefficient (n(n-2))^{(n-2)/2}.
    const double a = std::pow(n * (n - 2.0), (n - 2.0) / 2.0);
    CHECK(prof.tail().a == doctest::Approx(a).epsilon(1e-3));
    CHECK(prof.tail().b == doctest::Approx(a).epsilon(1e-3));
    CHECK(prof.ode_residual() < 1e-6);
  }
}

TEST_CASE("tail model continues the sampled profile") {
  const auto& prof = profile_at(4, 3.0);
  const double r = prof.r_max();
  CHECK(prof.U(r * 2.0) == doctest::Approx(bubble(4, r * 2.0)).epsilon(1e-5));
  CHECK(prof.U(r * 50.0) == doctest::Approx(bubble(4, r * 50.0)).epsilon(1e-5));
}

TEST_CASE("shots bracket the ground state") {
  const auto pp = ProblemParams::on_hyperbola(4, 3.0);
  CHECK(shoot(pp, 1.1, 1e6, 1e-10).cls == ShotClass::UHitsZero);
  CHECK(shoot(pp, 0.9, 1e6, 1e-10).cls == ShotClass::VHitsZero);
  CHECK_THROWS_AS(shoot(pp, -1.0, 1e6, 1e-10), DomainError);
  CHECK_THROWS_AS(shoot(pp, 1.0, 1e6, 1e-2), DomainError);
}

TEST_CASE("case (ii) decay") {
  const auto& prof = profile_at(4, 1.9);
  const auto th = theory_exponents(prof.params());
  CHECK(th.U_lead == doctest::Approx(2.0 * 1.9 - 2.0));
  CHECK(th.V_lead == doctest::Approx(2.0));
  CHECK(prof.tail().exp_U == doctest::Approx(1.8).epsilon(0.02));
  CHECK(prof.tail().exp_V == doctest::Approx(2.0).epsilon(0.01));
  // b^p = a ((n-2)p-2)(n-(n-2)p) from the ODE balance at infinity.
  const double p = 1.9;
  const double lhs = std::pow(prof.tail().b, p);
  const double rhs = prof.tail().a * (2.0 * p - 2.0) * (4.0 - 2.0 * p);
  CHECK(std::abs(lhs - rhs) / lhs < 0.02);
}

TEST_CASE("profile is positive and decreasing") {
  const auto& prof = profile_at(4, 1.9);
  const auto s = prof.samples();
  for (std::size_t i = 1; i < s.size(); ++i) {
    CHECK(s[i].U > 0.0);
    CHECK(s[i].U <= s[i - 1].U);
    CHECK(s[i].V <= s[i - 1].V);
  }
}

TEST_CASE("tail window must span a decade") {
  const auto& prof = profile_at(4, 3.0);
  CHECK_THROWS_AS(fit_tail(prof, 100.0, 500.0), WindowTooNarrow);
}

TEST_CASE("power series evaluation") {
  const std::vector<PowerTerm> terms{{2.0, 1.0}, {3.0, 2.0}};
  CHECK(eval_terms(terms, 2.0) == doctest::Approx(1.0 + 0.75));
  CHECK(eval_terms_derivative(terms, 2.0) == doctest::Approx(-2.0 / 4.0 - 6.0 / 8.0));
}
