#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lanemden/errors.hpp"
#include "lanemden/reduced_energy.hpp"

using namespace lanemden;
using std::numbers::pi;

namespace {

EnergyConstants all_ones() {
  EnergyConstants k;
  k.A1 = k.A2 = k.B1 = k.B2 = k.C1 = k.C2 = k.D1 = k.D2 = 1.0;
  return k;
}

EnergyConstants symmetric_closed_forms() {
  EnergyConstants k;
  k.A1 = k.A2 = 32 * pi * pi / 3;
  k.B1 = k.B2 = 8 * std::sqrt(2.0) * pi * pi;
  k.C1 = k.C2 = 24 * std::sqrt(2.0) * pi * pi;
  k.D1 = k.D2 = -80 * pi * pi / 9;
  return k;
}

}  // namespace

TEST_CASE("synthetic fixture") {
  const ReducedEnergy re(all_ones(), 4, 3.0, 3.0, 1.0, 1.0);
  // (1/4)(1/4 - 1) * 2 + 0 - 2
  CHECK(re.G(1.0) == doctest::Approx(-2.375).epsilon(1e-15));
  CHECK(re.log_coefficient() == doctest::Approx(0.5));
  CHECK(re.linear_coefficient() == doctest::Approx(2.0));
  CHECK(re.d_star() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(re.leading() == doctest::Approx(0.5));
}

TEST_CASE("symmetric point maximizer") {
  const ReducedEnergy re(symmetric_closed_forms(), 4, 3.0, 3.0, 1.0, 1.0);
  const double ds = re.d_star();
  CHECK(std::abs(ds - 1.0 / (6.0 * std::sqrt(2.0))) < 1e-12);
  CHECK(std::abs(re.G_prime(ds)) <= 1e-12 * re.linear_coefficient());
  CHECK(re.G_second(ds) < 0.0);
  CHECK(std::abs(re.d_star_golden() - ds) / ds < 1e-6);
  CHECK(std::abs(re.d_star_bisection() - ds) / ds < 1e-10);
  // Log coefficient of eps log eps: (n/(p+1)^2 + n/(q+1)^2) A1 = 16 pi^2 / 3.
  CHECK(re.log_coefficient() == doctest::Approx(16 * pi * pi / 3).epsilon(1e-14));
  // G' changes sign once on a wide log grid and G is concave.
  int changes = 0;
  double prev = re.G_prime(1e-4);
  for (int i = 1; i <= 800; ++i) {
    const double d = 1e-4 * std::pow(1e8, i / 800.0);
    const double g = re.G_prime(d);
    if ((g > 0) != (prev > 0)) ++changes;
    prev = g;
    CHECK(re.G_second(d) < 0.0);
  }
  CHECK(changes == 1);
  const double eta = re.eta_window();
  CHECK(ds > 2 * eta);
  CHECK(ds < 1 / (2 * eta));
}

TEST_CASE("G derivatives match finite differences") {
  EnergyConstants k = symmetric_closed_forms();
  k.B2 *= 1.3;
  k.D2 *= 0.7;
  const ReducedEnergy re(k, 4, 2.5, 11.0 / 3.0, 1.0, 0.5);
  for (double d : {0.05, 0.2, 1.0}) {
    const double h = 1e-5 * d;
    CHECK(re.G_prime(d) == doctest::Approx((re.G(d + h) - re.G(d - h)) / (2 * h)).epsilon(1e-7));
    CHECK(re.G_second(d) == doctest::Approx((re.G_prime(d + h) - re.G_prime(d - h)) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("expansion of J") {
  const ReducedEnergy re(symmetric_closed_forms(), 4, 3.0, 3.0, 1.0, 1.0);
  const double eps = 0.01, d = 0.2;
  const auto e = re.J_expansion(eps, d);
  CHECK(e.leading == doctest::Approx(0.5 * 32 * pi * pi / 3));
  CHECK(e.eps_log_eps_term == doctest::Approx(re.log_coefficient() * eps * std::log(eps)));
  CHECK(e.eps_term == doctest::Approx(re.G(d) * eps));
  CHECK_THROWS_AS(re.J_expansion(0.5, d), DomainError);
}

TEST_CASE("domain errors") {
  const ReducedEnergy re(all_ones(), 4, 3.0, 3.0, 1.0, 1.0);
  CHECK_THROWS_AS(re.G(0.0), DomainError);
  CHECK_THROWS_AS(re.G_prime(-1.0), DomainError);
  const ReducedEnergy flat(all_ones(), 4, 3.0, 3.0, 0.0, 0.0);
  CHECK_THROWS_AS(flat.d_star(), DomainError);
  EnergyConstants bad = all_ones();
  bad.C1 = bad.C2 = -10.0;
  CHECK_THROWS_AS(ReducedEnergy(bad, 4, 3.0, 3.0, 1.0, 1.0), DomainError);
}
