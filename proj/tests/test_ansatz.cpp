#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lanemden/ansatz.hpp"
#include "lanemden/ball_quadrature.hpp"
#include "lanemden/errors.hpp"

using namespace lanemden;

namespace {

double unit_ball_volume(int n) { return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0); }

std::shared_ptr<const RadialProfile> profile3() {
  static auto p = std::make_shared<const RadialProfile>(find_ground_state(ProblemParams::on_hyperbola(4, 3.0)));
  return p;
}

}  // namespace

TEST_CASE("ball quadrature integrates polynomials exactly") {
  for (int n : {4, 5, 6}) {
    for (int level : {0, 1, 2}) {
      const BallQuadrature q(n, 0.01, level);
      const double vol = unit_ball_volume(n);
      CHECK(q.integrate([](double, double) { return 1.0; }) == doctest::Approx(vol).epsilon(1e-13));
      CHECK(q.integrate_upper([](double, double) { return 1.0; }) == doctest::Approx(vol / 2).epsilon(1e-13));
      // Second moments: int x_n^2 = |B|/(n+2), int |x|^2 = n|B|/(n+2).
      CHECK(q.integrate([](double, double t) { return t * t; }) == doctest::Approx(vol / (n + 2)).epsilon(1e-13));
      CHECK(q.integrate([](double s, double t) { return s * s + t * t; }) ==
            doctest::Approx(n * vol / (n + 2)).epsilon(1e-13));
    }
  }
}

TEST_CASE("odd integrands cancel exactly") {
  const BallQuadrature q(4, 0.01, 1);
  CHECK(q.integrate([](double s, double t) { return t * std::exp(s); }) == 0.0);
  CHECK(q.integrate([](double, double t) { return std::pow(std::abs(t), 0.3) * (t > 0 ? 1 : -1) / (1e-4 + t * t); }) ==
        0.0);
}

TEST_CASE("concentrated integrand near the pole") {
  // int_{R^4} (1+|y|^2/8)^{-4} = 32 pi^2 / 3 restricted to the ball around e_n at scale delta.
  const double delta = 0.01;
  const BallQuadrature q(4, delta, 1);
  const double val = q.integrate([&](double s, double t) {
    const double r2 = (s * s + (t - 1) * (t - 1)) / (delta * delta);
    return std::pow(delta, -4) * std::pow(1.0 + r2 / 8.0, -4);
  });
  // Half the full-space mass, minus an O(delta) boundary loss.
  const double half = 16.0 * std::numbers::pi * std::numbers::pi / 3.0;
  CHECK(val < half);
  CHECK(val == doctest::Approx(half).epsilon(0.05));
}

TEST_CASE("quadrature argument checks") {
  CHECK_THROWS_AS(BallQuadrature(4, 0.0, 1), DomainError);
  CHECK_THROWS_AS(BallQuadrature(4, 0.01, -1), DomainError);
}

TEST_CASE("bubble rescaling") {
  const std::vector<double> xi{0, 0, 0, 1}, x{0.01, 0.0, 0.02, 0.97};
  const double delta = 0.05;
  const auto b = bubble_eval(*profile3(), xi, delta, x);
  const double r2 = (0.01 * 0.01 + 0.02 * 0.02 + 0.03 * 0.03) / (delta * delta);
  // Scaling exponent n/(q+1) = 1 at the symmetric point.
  CHECK(b.U == doctest::Approx(1.0 / delta / (1.0 + r2 / 8.0)).epsilon(1e-7));
  CHECK(b.V == doctest::Approx(b.U).epsilon(1e-7));
  CHECK_THROWS_AS(bubble_eval(*profile3(), xi, -1.0, x), DomainError);
}

TEST_CASE("two-bubble fields are odd in x_n") {
  const double delta = 0.05;
  const auto corr = make_corrections(profile3(), 2.0 / delta + 2.0);
  const Ansatz ans(profile3(), corr, delta);
  for (auto [s, t] : {std::pair{0.1, 0.9}, {0.3, 0.2}, {0.0, 0.99}}) {
    for (auto kind : {FieldKind::W1, FieldKind::W2, FieldKind::PW1Approx, FieldKind::PW2Approx}) {
      CHECK(ans.field(kind, s, -t) == doctest::Approx(-ans.field(kind, s, t)).epsilon(1e-12));
    }
    const auto pt = ans.at(s, t);
    CHECK(pt.corr1 == doctest::Approx(pt.phi1_minus - pt.phi1_plus).epsilon(1e-12));
    CHECK(pt.PW1() == doctest::Approx(pt.W1() - pt.corr1));
  }
  const std::vector<double> outside{0.0, 0.0, 0.8, 0.8};
  CHECK_THROWS_AS(ans.field(FieldKind::W1, outside), DomainError);
  CHECK_THROWS_AS(Ansatz(profile3(), corr, 0.5), DomainError);

  const BallQuadrature fine(4, delta, 2), coarse(4, delta, 1);
  auto w1 = [&](double s, double t) { return ans.field(FieldKind::PW1Approx, s, t); };
  const auto res = symmetry_and_compatibility_check(w1, 4.0, fine, coarse);
  CHECK(std::abs(res.mean) <= 10 * res.error_estimate + 1e-300);
  auto even = [&](double s, double t) { return ans.at(s, t).Ue + ans.at(s, t).Um; };
  CHECK_THROWS_AS(symmetry_and_compatibility_check(even, 4.0, fine, coarse), QuadratureAsymmetry);
}
