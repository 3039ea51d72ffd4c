#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lanemden/constants.hpp"
#include "lanemden/errors.hpp"

using namespace lanemden;
using std::numbers::pi;

namespace {

double half_line(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> q;
  // Integrands are negligible beyond 1e8; cutting there avoids 0 * inf.
  return q.integrate([&](double r) { return r < 1e8 ? f(r) : 0.0; }, 1e-13);
}

const RadialProfile& profile(int n, double p) {
  static const RadialProfile s4 = find_ground_state(ProblemParams::on_hyperbola(4, 3.0));
  static const RadialProfile s5 = find_ground_state(ProblemParams::on_hyperbola(5, 7.0 / 3.0));
  static const RadialProfile a = find_ground_state(ProblemParams::on_hyperbola(4, 2.5));
  static const RadialProfile b = find_ground_state(ProblemParams::on_hyperbola(4, 1.9));
  if (n == 5) return s5;
  if (p == 3.0) return s4;
  return p > 2.0 ? a : b;
}

}  // namespace

TEST_CASE("closed forms at the n = 4 symmetric point") {
  const auto k = compute_constants(profile(4, 3.0));
  CHECK(k.A1 == doctest::Approx(32 * pi * pi / 3).epsilon(1e-8));
  CHECK(k.A2 == doctest::Approx(32 * pi * pi / 3).epsilon(1e-8));
  CHECK(k.B1 == doctest::Approx(8 * std::sqrt(2.0) * pi * pi).epsilon(1e-6));
  CHECK(k.C1 == doctest::Approx(24 * std::sqrt(2.0) * pi * pi).epsilon(1e-6));
  CHECK(k.D1 == doctest::Approx(-80 * pi * pi / 9).epsilon(1e-6));
  CHECK(k.B2 == doctest::Approx(k.B1).epsilon(1e-9));
  CHECK(k.C2 == doctest::Approx(k.C1).epsilon(1e-9));
  CHECK(k.D2 == doctest::Approx(k.D1).epsilon(1e-9));
}

TEST_CASE("n = 5 symmetric point against the explicit bubble") {
  // U = V = (1 + r^2/15)^{-3/2}, q+1 = 10/3, U^{q+1} = (1 + r^2/15)^{-5}.
  auto U = [](double r) { return std::pow(1 + r * r / 15, -1.5); };
  auto dU = [](double r) { return -0.2 * r * std::pow(1 + r * r / 15, -2.5); };
  auto Uq = [](double r) { return std::pow(1 + r * r / 15, -5.0); };
  const double s4 = 8 * pi * pi / 3, s3 = 2 * pi * pi;
  const double A = s4 * half_line([&](double r) { return std::pow(r, 4) * Uq(r); });
  const double B = 0.5 * s3 * half_line([&](double r) { return std::pow(r, 5) * Uq(r); });
  const double C = -s3 * half_line([&](double r) { return std::pow(r, 4) * dU(r) * U(r); });
  const double D = s4 * half_line([&](double r) { return r > 0 ? std::pow(r, 4) * Uq(r) * std::log(U(r)) : 0.0; });
  const auto k = compute_constants(profile(5, 0));
  CHECK(k.A1 == doctest::Approx(A).epsilon(1e-7));
  CHECK(k.B1 == doctest::Approx(B).epsilon(1e-6));
  CHECK(k.C1 == doctest::Approx(C).epsilon(1e-6));
  CHECK(k.D1 == doctest::Approx(D).epsilon(1e-6));
}

TEST_CASE("hyperbola identity off the symmetric point") {
  for (double p : {2.5, 1.9}) {
    const auto k = compute_constants(profile(4, p));
    CHECK(k.identity_deviation() < 1e-3);
    CHECK(k.B1 > 0.0);
    CHECK(k.C1 > 0.0);
    CHECK(k.D1 < 0.0);
  }
}

TEST_CASE("A1 by an independent quadrature of the sampled profile") {
  const auto& prof = profile(4, 2.5);
  const double q1 = prof.params().q + 1.0;
  const double ref = 2 * pi * pi * half_line([&](double r) { return r * r * r * std::pow(prof.U(r), q1); });
  CHECK(compute_A_D(prof).A1 == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("DELTA mode approaches the limit") {
  const auto& prof = profile(4, 3.0);
  const auto lim = compute_B(prof, BMode::Limit);
  const auto b2 = compute_B(prof, BMode::Delta, 0.02);
  const auto b1 = compute_B(prof, BMode::Delta, 0.01);
  CHECK(std::abs(b1.B1 / lim.B1 - 1) < std::abs(b2.B1 / lim.B1 - 1));
  CHECK(std::abs(b1.B1 / lim.B1 - 1) < 5e-3);
  CHECK_THROWS_AS(compute_B(prof, BMode::Delta, 0.2), DomainError);
  const auto k = compute_constants(prof, BMode::Delta, 0.01);
  CHECK(k.b_mode == BMode::Delta);
  CHECK(k.delta_used == 0.01);
}
