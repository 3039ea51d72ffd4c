// Acceptance suite: one PASS/FAIL line per criterion.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "lanemden/cli.hpp"
#include "lanemden/constants.hpp"
#include "lanemden/halfspace.hpp"
#include "lanemden/reduced_energy.hpp"
#include "lanemden/verify.hpp"

using namespace lanemden;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

std::shared_ptr<const RadialProfile> solve(double p) {
  return std::make_shared<const RadialProfile>(find_ground_state(ProblemParams::on_hyperbola(4, p, 1.0, 1.0)));
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    files[fs::relative(e.path(), dir).string()] = {std::istreambuf_iterator<char>(in), {}};
  }
  return files;
}

std::string failed_metrics(const ExpansionReport& rep) {
  std::string s;
  for (const auto& m : rep.metrics) {
    if (!m.pass) s += " " + m.name + "=" + fmt("%.4g", m.measured);
  }
  return s;
}

Outcome from_reports(const std::vector<ExpansionReport>& reps) {
  bool ok = true;
  std::string detail;
  for (const auto& r : reps) {
    ok = ok && r.pass;
    detail += r.name + (r.pass ? " PASS" : " FAIL" + failed_metrics(r)) + "; ";
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out_dir = argc > 1 ? argv[1] : "acceptance_out";
  const auto p3 = solve(3.0), p25 = solve(2.5), p19 = solve(1.9);

  criterion(1, "closed-form ground state", [&] {
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double r = 0.01 * i, exact = 1.0 / (1.0 + r * r / 8.0);
      const auto s = p3->evaluate(r);
      worst = std::max({worst, std::abs(s.U / exact - 1), std::abs(s.V / exact - 1)});
    }
    const double dv = std::abs(p3->v0() - 1), da = std::abs(p3->tail().a / 8 - 1), db = std::abs(p3->tail().b / 8 - 1);
    return Outcome{dv <= 1e-6 && worst <= 1e-6 && da <= 1e-3 && db <= 1e-3,
                   fmt("|v0-1|=%.2e profile=%.2e a=%.6f b=%.6f", dv, worst, p3->tail().a, p3->tail().b)};
  });

  const auto k3 = compute_constants(*p3), k25 = compute_constants(*p25), k19 = compute_constants(*p19);

  criterion(2, "A1 = A2 off the symmetric point", [&] {
    const double d25 = k25.identity_deviation(), d19 = k19.identity_deviation();
    return Outcome{d25 <= 1e-3 && d19 <= 1e-3, fmt("p=2.5: %.2e  p=1.9: %.2e", d25, d19)};
  });

  criterion(3, "decay coefficient relation in case (ii)", [&] {
    const double p = 1.9, a = p19->tail().a, b = p19->tail().b;
    const double rel = std::abs(std::pow(b, p) - a * (2 * p - 2) * (4 - 2 * p)) / std::pow(b, p);
    return Outcome{rel <= 0.02, fmt("a=%.6g b=%.6g rel=%.3e", a, b, rel)};
  });

  criterion(4, "decay exponents", [&] {
    bool ok = true;
    std::string d;
    for (auto [p, prof] : {std::pair{3.0, p3}, {2.5, p25}, {1.9, p19}}) {
      const double eu = prof->tail().exp_U, ev = prof->tail().exp_V;
      const double target_u = p > 2.0 ? 2.0 : 2 * p - 2, tol_u = p > 2.0 ? 0.01 : 0.02;
      ok = ok && std::abs(ev / 2.0 - 1) <= 0.01 && std::abs(eu / target_u - 1) <= tol_u;
      d += fmt("p=%.1f exp_U=%.5f (%.2f) exp_V=%.5f; ", p, eu, target_u, ev);
    }
    return Outcome{ok, d};
  });

  criterion(5, "kernel identity", [&] {
    bool ok = true;
    std::string d;
    for (auto [p, prof] : {std::pair{3.0, p3}, {2.5, p25}, {1.9, p19}}) {
      const auto r = kernel_residuals(*prof);
      ok = ok && r.finite_difference <= 1e-4;
      d += fmt("p=%.1f FD=%.1e; ", p, r.finite_difference);
    }
    const double ode = kernel_residuals(*p3).ode_derivatives, closed = kernel_residual_closed_form(4);
    ok = ok && ode <= 1e-6 && closed <= 1e-6;
    return Outcome{ok, d + fmt("analytic: ODE route %.1e, explicit bubble %.1e", ode, closed)};
  });

  criterion(6, "half-space corrections", [&] {
    bool ok = true;
    std::string d;
    const std::vector<double> radii{0.5, 1.0, 2.0, 5.0, 10.0};
    for (auto [p, prof] : {std::pair{3.0, p3}, {1.9, p19}}) {
      for (auto kind : {CorrectionKind::Phi1, CorrectionKind::Phi2}) {
        const HalfSpaceCorrection corr(prof, kind);
        const double h1 = verify_harmonic(corr, 0.5, 2.0, 0.5, 2.0, 0.1);
        const double h2 = verify_harmonic(corr, 0.5, 2.0, 0.5, 2.0, 0.05);
        const double order = std::log2(h1 / h2);
        const double neu = verify_neumann_data(corr, radii);
        const auto fit = fit_phi_decay(corr, 100.0, 1000.0);
        ok = ok && order >= 1.8 && neu <= 1e-2 && fit.rel_deviation <= 0.05;
        d += fmt("p=%.1f %s order=%.2f neumann=%.1e decay=%.4f/%.4f; ", p, to_string(kind).c_str(), order, neu,
                 fit.exponent, fit.expected);
      }
    }
    return Outcome{ok, d};
  });

  criterion(7, "constants at the symmetric point", [&] {
    const double ea = std::abs(k3.A1 / (32 * pi * pi / 3) - 1);
    const double eb = std::abs(k3.B1 / (8 * std::sqrt(2.0) * pi * pi) - 1);
    const double ec = std::abs(k3.C1 / (24 * std::sqrt(2.0) * pi * pi) - 1);
    return Outcome{ea <= 1e-4 && eb <= 1e-2 && ec <= 1e-2, fmt("rel A1 %.1e B1 %.1e C1 %.1e", ea, eb, ec)};
  });

  // Ball-integral checks at n = 4, p = 3 with default samples.
  const std::vector<double> deltas{0.04, 0.02, 0.01}, eps{0.025, 0.0125, 0.00625};
  const double d = 0.2;
  std::optional<VerifyContext> ctx;
  try {
    ctx = make_verify_context(p3, k3, d * eps.back());
  } catch (const std::exception& e) {
    std::printf("context construction failed: %s\n", e.what());
  }
  auto need_ctx = [&]() -> const VerifyContext& {
    if (!ctx) throw std::runtime_error("no verification context");
    return *ctx;
  };

  criterion(8, "boundary loss slope", [&] { return from_reports({check_boundary_loss(need_ctx(), deltas)}); });
  criterion(9, "phi pairing and o(delta) terms", [&] {
    return from_reports({check_phi_pairing(need_ctx(), deltas), check_cross_terms(need_ctx(), deltas)});
  });
  criterion(10, "gradient energy slope", [&] { return from_reports({check_gradient_expansion(need_ctx(), deltas)}); });
  criterion(11, "nonlinear energy expansion", [&] {
    return from_reports({check_nonlinear_expansion(need_ctx(), eps, d, NonlinearSide::P),
                         check_nonlinear_expansion(need_ctx(), eps, d, NonlinearSide::Q)});
  });

  criterion(12, "maximizer of the reduced energy", [&] {
    const ReducedEnergy re(k3, p3->params());
    const double ds = re.d_star();
    const double gp = std::abs(re.G_prime(ds)) / re.linear_coefficient();
    const double golden = std::abs(re.d_star_golden() - ds) / ds;
    const double g2 = re.G_second(ds);
    EnergyConstants exact;
    exact.A1 = exact.A2 = 32 * pi * pi / 3;
    exact.B1 = exact.B2 = 8 * std::sqrt(2.0) * pi * pi;
    exact.C1 = exact.C2 = 24 * std::sqrt(2.0) * pi * pi;
    exact.D1 = exact.D2 = -80 * pi * pi / 9;
    const double sym = ReducedEnergy(exact, p3->params()).d_star();
    const double target = 1.0 / (6 * std::sqrt(2.0));
    const bool ok = gp <= 1e-12 && golden <= 1e-6 && g2 < 0 && std::abs(sym - target) <= 1e-6 &&
                    std::abs(ds - target) <= 1e-6;
    return Outcome{ok, fmt("d*=%.12f |G'|/lambda=%.1e golden rel=%.1e G''=%.4g closed-form d*=%.12f", ds, gp, golden,
                           g2, sym)};
  });

  criterion(13, "scaling table rows", [&] {
    const auto pp = p3->params();
    return from_reports({check_scaling_table(pp, ScalingRow::U1, pp.q + 1), check_scaling_table(pp, ScalingRow::U1, 1.0),
                         check_scaling_table(pp, ScalingRow::V2, 2.0)});
  });

  criterion(14, "Taylor remainder of the nonlinearity", [&] {
    const auto rep = check_f_taylor(p3->params(), default_t_samples(), {0.1, 0.01});
    std::string dd;
    for (const auto& m : rep.metrics) dd += fmt("%s=%.3f ", m.name.c_str(), m.measured);
    return Outcome{rep.pass, dd};
  });

  criterion(15, "deterministic reports", [&] {
    const auto dir = out_dir / "determinism";
    fs::remove_all(dir);
    std::vector<std::map<std::string, std::string>> runs;
    for (int k = 0; k < 2; ++k) {
      std::ostringstream o, e;
      const std::string out = dir.string();
      for (const char* cmd : {"verify", "report"}) {
        const int code = run_cli({"lanemden", "--out", out, cmd}, o, e);
        if (code != kExitOk) return Outcome{false, fmt("%s exited with %d: %s", cmd, code, e.str().c_str())};
      }
      runs.push_back(snapshot(dir));
    }
    return Outcome{runs[0] == runs[1] && !runs[0].empty(), fmt("%zu files compared byte for byte", runs[0].size())};
  });

  std::printf("%s: %d of 15 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
