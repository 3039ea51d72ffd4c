#include "lanemden/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lanemden/ball_quadrature.hpp"
#include "lanemden/errors.hpp"
#include "lanemden/fitting.hpp"
#include "lanemden/quadrature.hpp"

namespace lanemden {

// ---------------------------------------------------------------- reports

Metric relative_metric(std::string name, double measured, double target, double tolerance) {
  const double dev = std::abs(measured - target) / std::abs(target);
  return {std::move(name), "relative", measured, target, dev, tolerance, dev <= tolerance};
}

Metric absolute_metric(std::string name, double measured, double target, double tolerance) {
  const double dev = std::abs(measured - target);
  return {std::move(name), "absolute", measured, target, dev, tolerance, dev <= tolerance};
}

Metric at_least_metric(std::string name, double measured, double bound) {
  const double dev = std::max(0.0, bound - measured);
  return {std::move(name), "at_least", measured, bound, dev, 0.0, measured >= bound};
}

Metric at_most_metric(std::string name, double measured, double bound) {
  const double dev = std::max(0.0, measured - bound);
  return {std::move(name), "at_most", measured, bound, dev, 0.0, measured <= bound};
}

void ExpansionReport::add_series(std::string label, std::vector<double> values) {
  series.emplace_back(std::move(label), std::move(values));
}

const std::vector<double>& ExpansionReport::get_series(const std::string& label) const {
  for (const auto& [k, v] : series) {
    if (k == label) return v;
  }
  throw DomainError("no series named " + label);
}

const Metric& ExpansionReport::metric(const std::string& label) const {
  for (const auto& m : metrics) {
    if (m.name == label) return m;
  }
  throw DomainError("no metric named " + label);
}

void ExpansionReport::finalize() {
  pass = !metrics.empty() && std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.pass; });
}

double richardson(double delta1, double S1, double delta2, double S2) {
  return S1 + (S1 - S2) * delta1 / (delta2 - delta1);
}

std::vector<double> halving_ratios(const std::vector<double>& deltas, const std::vector<double>& values) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const double halvings = std::log2(deltas[k] / deltas[k + 1]);
    out.push_back(std::pow(std::abs(values[k] / values[k + 1]), 1.0 / halvings));
  }
  return out;
}

// ---------------------------------------------------------------- context

VerifyContext make_verify_context(std::shared_ptr<const RadialProfile> profile, const EnergyConstants& constants,
                                  double delta_min, int level, double quad_tol) {
  if (!(delta_min > 0.0 && delta_min <= 0.2)) throw DomainError("delta_min must lie in (0, 0.2]");
  if (!(quad_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  VerifyContext ctx;
  ctx.corrections = make_corrections(profile, 2.0 / delta_min + 2.0);
  ctx.profile = std::move(profile);
  ctx.constants = constants;
  ctx.level = level;
  ctx.quad_tol = quad_tol;
  return ctx;
}

namespace {

void require_deltas(const std::vector<double>& deltas, std::size_t min_count) {
  if (deltas.size() < min_count) throw DomainError("too few delta samples");
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(deltas[k] > 0.0 && deltas[k] <= 0.1)) throw DomainError("delta samples must lie in (0, 0.1]");
    if (k > 0 && !(deltas[k] < deltas[k - 1])) throw DomainError("delta samples must decrease");
  }
}

void require_eps(const std::vector<double>& eps, std::size_t min_count) {
  if (eps.size() < min_count) throw DomainError("too few epsilon samples");
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0.0 && eps[k] <= 0.1)) throw DomainError("epsilon samples must lie in (0, 0.1]");
    if (k > 0 && !(eps[k] < eps[k - 1])) throw DomainError("epsilon samples must decrease");
  }
}

double spow(double x, double e) { return x == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(x), e), x); }
double apow(double x, double e) { return x == 0.0 ? 0.0 : std::pow(std::abs(x), e); }

using PointIntegrand = std::function<void(const AnsatzPoint&, double*)>;

/// Ball integrals of `count` quantities at one delta, on levels L and L+1.
/// Returns the finer values; throws when they move by more than quad_tol.
std::vector<double> ball_sweep(const VerifyContext& ctx, double delta, std::size_t count, const PointIntegrand& f,
                               const std::string& check, double abs_floor) {
  const Ansatz an(ctx.profile, ctx.corrections, delta);
  const int n = ctx.profile->params().n;
  auto g = [&](double s, double t, double* out) { f(an.at(s, t), out); };
  const auto coarse = BallQuadrature(n, delta, ctx.level).integrate_many(count, g);
  const auto fine = BallQuadrature(n, delta, ctx.level + 1).integrate_many(count, g);
  for (std::size_t k = 0; k < count; ++k) {
    const double diff = std::abs(fine[k] - coarse[k]);
    if (!std::isfinite(fine[k]) || diff > ctx.quad_tol * std::abs(fine[k]) + abs_floor) {
      throw QuadratureNonConvergent(check + ": quantity " + std::to_string(k) + " changed by " +
                                    std::to_string(diff) + " between refinement levels at delta " +
                                    std::to_string(delta));
    }
  }
  return fine;
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t k) {
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r[k]);
  return out;
}

/// Richardson limit of (values - ref)/delta over the two smallest deltas.
double slope_limit(const std::vector<double>& deltas, const std::vector<double>& values, double ref) {
  const std::size_t m = deltas.size();
  const double S1 = (values[m - 1] - ref) / deltas[m - 1];
  const double S2 = (values[m - 2] - ref) / deltas[m - 2];
  return richardson(deltas[m - 1], S1, deltas[m - 2], S2);
}

std::vector<double> slopes(const std::vector<double>& deltas, const std::vector<double>& values, double ref) {
  std::vector<double> out;
  for (std::size_t k = 0; k < deltas.size(); ++k) out.push_back((values[k] - ref) / deltas[k]);
  return out;
}

std::vector<double> over_delta(const std::vector<double>& deltas, const std::vector<double>& values) {
  return slopes(deltas, values, 0.0);
}

void add_ratio_metrics(ExpansionReport& rep, const std::string& label, const std::vector<double>& deltas,
                       const std::vector<double>& scaled) {
  const auto ratios = halving_ratios(deltas, scaled);
  rep.add_series(label + "_ratio", ratios);
  rep.metrics.push_back(at_least_metric(label + "_min_halving_ratio", *std::min_element(ratios.begin(), ratios.end()),
                                        1.5));
}

}  // namespace

// ---------------------------------------------------------------- boundary expansions

ExpansionReport check_boundary_loss(const VerifyContext& ctx, const std::vector<double>& deltas) {
  require_deltas(deltas, 2);
  const auto& pp = ctx.profile->params();
  const auto& k = ctx.constants;
  const double q1 = pp.q + 1.0, p1 = pp.p + 1.0;
  std::vector<std::vector<double>> rows;
  for (double d : deltas) {
    rows.push_back(ball_sweep(
        ctx, d, 3,
        [&](const AnsatzPoint& a, double* o) {
          o[0] = std::pow(a.Ue, q1);
          o[1] = std::pow(a.Ve, p1);
          o[2] = std::pow(a.Um, q1);
        },
        "boundary_loss", 1e-12 * k.A1));
  }
  ExpansionReport rep;
  rep.name = "boundary_loss";
  rep.sample_label = "delta";
  rep.samples = deltas;
  const auto I1 = column(rows, 0), I2 = column(rows, 1), I1m = column(rows, 2);
  rep.add_series("int_U_pow", I1);
  rep.add_series("int_V_pow", I2);
  rep.add_series("int_U_pow_reflected", I1m);
  rep.add_series("slope_U", slopes(deltas, I1, 0.5 * k.A1));
  rep.add_series("slope_V", slopes(deltas, I2, 0.5 * k.A2));
  rep.metrics.push_back(relative_metric("slope_U_limit", slope_limit(deltas, I1, 0.5 * k.A1), -k.B1, 0.05));
  rep.metrics.push_back(relative_metric("slope_V_limit", slope_limit(deltas, I2, 0.5 * k.A2), -k.B2, 0.05));
  double refl = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) refl = std::max(refl, std::abs(I1[i] - I1m[i]) / I1[i]);
  rep.metrics.push_back(at_most_metric("reflection_deviation", refl, 1e-12));
  rep.metrics.push_back(at_most_metric("boundary_loss_smallest_delta", I1.back() - 0.5 * k.A1, 0.0));
  rep.finalize();
  return rep;
}

ExpansionReport check_cross_terms(const VerifyContext& ctx, const std::vector<double>& deltas) {
  require_deltas(deltas, 3);
  const auto& pp = ctx.profile->params();
  std::vector<std::vector<double>> rows;
  for (double d : deltas) {
    rows.push_back(ball_sweep(
        ctx, d, 3,
        [&](const AnsatzPoint& a, double* o) {
          o[0] = a.Ue * std::pow(a.Um, pp.q);
          o[1] = a.Um * std::pow(a.Ue, pp.q);
          o[2] = a.Ve * std::pow(a.Vm, pp.p);
        },
        "cross_terms", 1e-14 * ctx.constants.A1));
  }
  ExpansionReport rep;
  rep.name = "cross_terms";
  rep.sample_label = "delta";
  rep.samples = deltas;
  const auto X1 = column(rows, 0), X1s = column(rows, 1), X2 = column(rows, 2);
  rep.add_series("cross_U", X1);
  rep.add_series("cross_U_swapped", X1s);
  rep.add_series("cross_V", X2);
  const auto s1 = over_delta(deltas, X1), s2 = over_delta(deltas, X2);
  rep.add_series("cross_U_over_delta", s1);
  rep.add_series("cross_V_over_delta", s2);
  add_ratio_metrics(rep, "cross_U", deltas, s1);
  add_ratio_metrics(rep, "cross_V", deltas, s2);
  double swap = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) swap = std::max(swap, std::abs(X1[i] - X1s[i]) / std::abs(X1[i]));
  rep.metrics.push_back(at_most_metric("swap_deviation", swap, 1e-10));
  rep.finalize();
  return rep;
}

ExpansionReport check_phi_pairing(const VerifyContext& ctx, const std::vector<double>& deltas) {
  require_deltas(deltas, 3);
  const auto& pp = ctx.profile->params();
  const auto& k = ctx.constants;
  std::vector<std::vector<double>> rows;
  for (double d : deltas) {
    rows.push_back(ball_sweep(
        ctx, d, 6,
        [&](const AnsatzPoint& a, double* o) {
          const double uq_e = std::pow(a.Ue, pp.q), uq_m = std::pow(a.Um, pp.q);
          const double vp_e = std::pow(a.Ve, pp.p), vp_m = std::pow(a.Vm, pp.p);
          o[0] = a.phi1_minus * uq_e;
          o[1] = a.phi2_minus * vp_e;
          o[2] = a.phi1_minus * uq_m;
          o[3] = a.phi1_plus * uq_e;
          o[4] = a.phi2_minus * vp_m;
          o[5] = a.phi2_plus * vp_e;
        },
        "phi_pairing", 1e-12 * k.C1));
  }
  ExpansionReport rep;
  rep.name = "phi_pairing";
  rep.sample_label = "delta";
  rep.samples = deltas;
  const char* labels[] = {"matched_1", "matched_2", "mismatched_1_minus", "mismatched_1_plus", "mismatched_2_minus",
                          "mismatched_2_plus"};
  for (std::size_t j = 0; j < 6; ++j) rep.add_series(labels[j], column(rows, j));
  const auto M1 = column(rows, 0), M2 = column(rows, 1);
  rep.add_series("matched_1_over_delta", over_delta(deltas, M1));
  rep.add_series("matched_2_over_delta", over_delta(deltas, M2));
  rep.metrics.push_back(relative_metric("matched_1_limit", slope_limit(deltas, M1, 0.0), -0.5 * k.C1, 0.05));
  rep.metrics.push_back(relative_metric("matched_2_limit", slope_limit(deltas, M2, 0.0), -0.5 * k.C2, 0.05));
  rep.metrics.push_back(at_most_metric("matched_max_value", std::max(*std::max_element(M1.begin(), M1.end()),
                                                                      *std::max_element(M2.begin(), M2.end())),
                                       0.0));
  for (std::size_t j = 2; j < 6; ++j) add_ratio_metrics(rep, labels[j], deltas, over_delta(deltas, column(rows, j)));
  rep.finalize();
  return rep;
}

ExpansionReport check_gradient_expansion(const VerifyContext& ctx, const std::vector<double>& deltas) {
  require_deltas(deltas, 2);
  const auto& pp = ctx.profile->params();
  const auto& k = ctx.constants;
  std::vector<std::vector<double>> rows;
  for (double d : deltas) {
    rows.push_back(ball_sweep(
        ctx, d, 4,
        [&](const AnsatzPoint& a, double* o) {
          const double lap1 = std::pow(a.Ue, pp.q) - std::pow(a.Um, pp.q);
          const double lap2 = std::pow(a.Ve, pp.p) - std::pow(a.Vm, pp.p);
          o[0] = a.PW1() * lap1;
          o[1] = a.PW2() * lap2;
          o[2] = a.W1() * lap1;
          o[3] = a.corr1 * lap1;
        },
        "gradient_expansion", 1e-12 * k.A1));
  }
  ExpansionReport rep;
  rep.name = "gradient_expansion";
  rep.sample_label = "delta";
  rep.samples = deltas;
  const auto G1 = column(rows, 0), G2 = column(rows, 1), I1 = column(rows, 2), I2 = column(rows, 3);
  std::vector<double> avg(G1.size());
  for (std::size_t i = 0; i < avg.size(); ++i) avg[i] = 0.5 * (G1[i] + G2[i]);
  rep.add_series("form_1", G1);
  rep.add_series("form_2", G2);
  rep.add_series("average", avg);
  rep.add_series("I1", I1);
  rep.add_series("I2", I2);
  rep.add_series("slope", slopes(deltas, avg, k.A1));
  const double target = -(k.B1 + k.B2) + 0.5 * (k.C1 + k.C2);
  rep.metrics.push_back(relative_metric("slope_limit", slope_limit(deltas, avg, k.A1), target, 0.10));
  rep.metrics.push_back(relative_metric("leading_value", avg.back(), k.A1, 0.10));
  rep.metrics.push_back(relative_metric("I1_slope_limit", slope_limit(deltas, I1, k.A1), -2.0 * k.B1, 0.10));
  rep.metrics.push_back(relative_metric("I2_over_delta_limit", slope_limit(deltas, I2, 0.0), -k.C1, 0.10));
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------- epsilon expansions

ExpansionReport check_nonlinear_expansion(const VerifyContext& ctx, const std::vector<double>& eps_list, double d,
                                          NonlinearSide side) {
  require_eps(eps_list, 3);
  if (!(d >= 0.05 && d <= 0.5)) throw DomainError("d must lie in [0.05, 0.5]");
  const auto& pp = ctx.profile->params();
  const auto& k = ctx.constants;
  const int n = pp.n;
  const bool pside = side == NonlinearSide::P;
  const double e = pside ? pp.p : pp.q;
  const double shift = pside ? pp.alpha : pp.beta;
  const double A = pside ? k.A2 : k.A1, B = pside ? k.B2 : k.B1, C = pside ? k.C2 : k.C1, D = pside ? k.D2 : k.D1;
  const double e1 = e + 1.0;

  ExpansionReport rep;
  rep.name = pside ? "nonlinear_expansion_p" : "nonlinear_expansion_q";
  rep.sample_label = "epsilon";
  rep.samples = eps_list;
  std::vector<double> fit_delta, fit_K, fit_J0, J0_at, R_over_eps, Fplus;
  bool odd_vanishes = true;
  for (double eps : eps_list) {
    const double s = shift * eps;
    for (double mult : {1.0, 2.0}) {
      const double delta = mult * d * eps;
      const auto v = ball_sweep(
          ctx, delta, 3,
          [&](const AnsatzPoint& a, double* o) {
            const double f = pside ? a.PW2() : a.PW1();
            o[0] = apow(f, e1);
            o[1] = apow(f, e1 + s);
            o[2] = apow(f, e1 - s);
          },
          rep.name, 1e-12 * A);
      const double odd = v[1] - v[2];
      fit_J0.push_back(v[0]);
      if (s > 0.0) {
        fit_delta.push_back(delta);
        fit_K.push_back(odd / (2.0 * e1 * s));
      } else if (odd != 0.0) {
        odd_vanishes = false;
      }
      if (mult == 1.0) {
        const double F = v[1] / (e1 + s);
        const double formula = (A - 2.0 * B * delta + e1 * C * delta) / e1 +
                               s * (-n / (e1 * e1) * std::log(delta) * A + D / e1 - A / (e1 * e1));
        J0_at.push_back(v[0]);
        Fplus.push_back(F);
        R_over_eps.push_back(std::abs(F - formula) / eps);
      }
    }
  }
  rep.add_series("energy", Fplus);
  rep.add_series("unperturbed_integral", J0_at);
  rep.add_series("remainder_over_eps", R_over_eps);
  add_ratio_metrics(rep, "remainder", eps_list, R_over_eps);
  if (shift > 0.0) {
    // The response carries -(n/(e+1)^2) log(delta) J0(delta); its delta log(delta) part is
    // removed using the measured J0 and its linear extrapolation to delta = 0.
    std::vector<double> c_log, c_one, c_d;
    for (double dl : fit_delta) {
      c_log.push_back(std::log(dl));
      c_one.push_back(1.0);
      c_d.push_back(dl);
    }
    const double J0_lim = linear_lsq({c_one, c_d}, fit_J0)[0];
    std::vector<double> K_c(fit_K.size());
    for (std::size_t i = 0; i < K_c.size(); ++i) {
      K_c[i] = fit_K[i] + n / (e1 * e1) * std::log(fit_delta[i]) * (fit_J0[i] - J0_lim);
    }
    const auto c = linear_lsq({c_log, c_one, c_d}, K_c);
    rep.add_series("fit_delta", fit_delta);
    rep.add_series("first_order_response", fit_K);
    rep.add_series("first_order_response_reduced", K_c);
    rep.add_series("fit_unperturbed_integral", fit_J0);
    rep.metrics.push_back(relative_metric("log_delta_coefficient", c[0], -n * A / (e1 * e1), 0.10));
    rep.metrics.push_back(relative_metric("log_moment_coefficient", c[1], D / e1, 0.10));
    const double eps_min = eps_list.back();
    rep.metrics.push_back(relative_metric("exponent_shift_term", -shift * eps_min * J0_at.back() / (e1 * e1),
                                          -shift * eps_min * A / (e1 * e1), 0.10));
  } else {
    rep.metrics.push_back(absolute_metric("perturbation_vanishes", odd_vanishes ? 0.0 : 1.0, 0.0, 0.0));
  }
  rep.metrics.push_back(relative_metric("leading_constant", J0_at.back() / e1, A / e1, 0.10));
  rep.finalize();
  return rep;
}

ExpansionReport check_norm_orders(const VerifyContext& ctx, const std::vector<double>& eps_list, double d) {
  require_eps(eps_list, 2);
  if (!(d >= 0.05 && d <= 0.5)) throw DomainError("d must lie in [0.05, 0.5]");
  const auto& pp = ctx.profile->params();
  ExpansionReport rep;
  rep.name = "norm_orders";
  rep.sample_label = "epsilon";
  rep.samples = eps_list;
  // f, f' norms for the q-side (PW1, beta) and p-side (PW2, alpha).
  const double eq = pp.q, ep = pp.p;
  const double rq = (eq + 1.0) / eq, rq1 = (eq + 1.0) / (eq - 1.0);
  const double rp = (ep + 1.0) / ep, rp1 = (ep + 1.0) / (ep - 1.0);
  std::vector<std::vector<double>> norms(4);
  std::vector<double> logs;
  for (double eps : eps_list) {
    const double delta = d * eps;
    const double sb = pp.beta * eps, sa = pp.alpha * eps;
    const auto v = ball_sweep(
        ctx, delta, 4,
        [&](const AnsatzPoint& a, double* o) {
          const double w1 = a.PW1(), w2 = a.PW2();
          o[0] = apow(spow(w1, eq + sb) - spow(w1, eq), rq);
          o[1] = apow((eq + sb) * apow(w1, eq - 1.0 + sb) - eq * apow(w1, eq - 1.0), rq1);
          o[2] = apow(spow(w2, ep + sa) - spow(w2, ep), rp);
          o[3] = apow((ep + sa) * apow(w2, ep - 1.0 + sa) - ep * apow(w2, ep - 1.0), rp1);
        },
        "norm_orders", 1e-300);
    norms[0].push_back(std::pow(v[0], 1.0 / rq));
    norms[1].push_back(std::pow(v[1], 1.0 / rq1));
    norms[2].push_back(std::pow(v[2], 1.0 / rp));
    norms[3].push_back(std::pow(v[3], 1.0 / rp1));
    logs.push_back(std::abs(std::log(delta)));
  }
  const char* labels[] = {"f1_norm", "f1_prime_norm", "f2_norm", "f2_prime_norm"};
  const bool active[] = {pp.beta > 0.0, pp.beta > 0.0, pp.alpha > 0.0, pp.alpha > 0.0};
  for (std::size_t j = 0; j < 4; ++j) {
    rep.add_series(labels[j], norms[j]);
    if (!active[j]) {
      rep.metrics.push_back(absolute_metric(std::string(labels[j]) + "_max", *std::max_element(norms[j].begin(),
                                                                                               norms[j].end()),
                                            0.0, 0.0));
      continue;
    }
    std::vector<double> reduced;
    for (std::size_t i = 0; i < logs.size(); ++i) reduced.push_back(norms[j][i] / logs[i]);
    rep.metrics.push_back(at_least_metric(std::string(labels[j]) + "_order", loglog_slope(eps_list, reduced), 0.9));
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------- kernel

namespace {

double d1_6(const std::vector<double>& f, std::size_t k, double h) {
  return (-f[k - 3] + 9.0 * f[k - 2] - 45.0 * f[k - 1] + 45.0 * f[k + 1] - 9.0 * f[k + 2] + f[k + 3]) / (60.0 * h);
}

double d2_6(const std::vector<double>& f, std::size_t k, double h) {
  return (2.0 * f[k - 3] - 27.0 * f[k - 2] + 270.0 * f[k - 1] - 490.0 * f[k] + 270.0 * f[k + 1] - 27.0 * f[k + 2] +
          2.0 * f[k + 3]) /
         (180.0 * h * h);
}

}  // namespace

KernelResiduals kernel_residuals(const RadialProfile& prof) {
  const auto& pp = prof.params();
  const int n = pp.n;
  const auto sc = scaling_exponents(pp);
  const auto& t = prof.t_grid();
  const auto &U = prof.U_grid(), &P = prof.P_grid(), &V = prof.V_grid(), &Q = prof.Q_grid();
  const std::size_t m = t.size();
  if (m < 8) throw DomainError("profile grid too short for the kernel check");
  const double h = t[1] - t[0];
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> Psi(m), Phi(m), gU(m), gV(m);
  for (std::size_t i = 0; i < m; ++i) {
    Psi[i] = P[i] + sc.su * U[i];
    Phi[i] = Q[i] + sc.sv * V[i];
    gU[i] = P[i] * std::exp(-t[i]);
    gV[i] = Q[i] * std::exp(-t[i]);
  }
  KernelResiduals res;
  for (std::size_t i = 3; i + 3 < m; ++i) {
    const double e2t = std::exp(2.0 * t[i]);
    const double kv = e2t * pp.p * std::pow(V[i], pp.p - 1.0);
    const double ku = e2t * pp.q * std::pow(U[i], pp.q - 1.0);
    // Dilation kernel: Psi_tt + (n-2) Psi_t + r^2 p V^{p-1} Phi = 0 and its partner.
    {
      const double a = d2_6(Psi, i, h), b = (n - 2) * d1_6(Psi, i, h), c = kv * Phi[i];
      const double fl = 100.0 * eps * (std::abs(P[i]) + sc.su * U[i]) / (h * h);
      const double a2 = d2_6(Phi, i, h), b2 = (n - 2) * d1_6(Phi, i, h), c2 = ku * Psi[i];
      const double fl2 = 100.0 * eps * (std::abs(Q[i]) + sc.sv * V[i]) / (h * h);
      res.finite_difference =
          std::max({res.finite_difference, std::abs(a + b + c) / (std::abs(a) + std::abs(b) + std::abs(c) + fl),
                    std::abs(a2 + b2 + c2) / (std::abs(a2) + std::abs(b2) + std::abs(c2) + fl2)});
    }
    // Same identity with derivatives taken from the ODE.
    {
      const double Vp = std::pow(V[i], pp.p), Uq = std::pow(U[i], pp.q);
      const double Pt = -(n - 2) * P[i] - e2t * Vp;
      const double Qt = -(n - 2) * Q[i] - e2t * Uq;
      const double Ptt = -(n - 2) * Pt - e2t * (2.0 * Vp + pp.p * std::pow(V[i], pp.p - 1.0) * Q[i]);
      const double Qtt = -(n - 2) * Qt - e2t * (2.0 * Uq + pp.q * std::pow(U[i], pp.q - 1.0) * P[i]);
      const double a = Ptt + sc.su * Pt, b = (n - 2) * (Pt + sc.su * P[i]), c = kv * Phi[i];
      const double a2 = Qtt + sc.sv * Qt, b2 = (n - 2) * (Qt + sc.sv * Q[i]), c2 = ku * Psi[i];
      res.ode_derivatives =
          std::max({res.ode_derivatives, std::abs(a + b + c) / (std::abs(a) + std::abs(b) + std::abs(c)),
                    std::abs(a2 + b2 + c2) / (std::abs(a2) + std::abs(b2) + std::abs(c2))});
    }
    // Translation kernel, angular mode one: g_tt + (n-2) g_t - (n-1) g + r^2 p V^{p-1} V' = 0.
    {
      const double a = d2_6(gU, i, h), b = (n - 2) * d1_6(gU, i, h), c = -(n - 1) * gU[i], s = kv * gV[i];
      const double fl = 100.0 * eps * std::abs(gU[i]) / (h * h);
      const double a2 = d2_6(gV, i, h), b2 = (n - 2) * d1_6(gV, i, h), c2 = -(n - 1) * gV[i], s2 = ku * gU[i];
      const double fl2 = 100.0 * eps * std::abs(gV[i]) / (h * h);
      res.translation = std::max(
          {res.translation,
           std::abs(a + b + c + s) / (std::abs(a) + std::abs(b) + std::abs(c) + std::abs(s) + fl),
           std::abs(a2 + b2 + c2 + s2) / (std::abs(a2) + std::abs(b2) + std::abs(c2) + std::abs(s2) + fl2)});
    }
  }
  return res;
}

double kernel_residual_closed_form(int n, double r_max, int samples) {
  if (n < 3) throw DomainError("closed-form bubble needs n >= 3");
  // U = (1+x)^{-m}, x = r^2/c; dilation kernel g(x) = m (1-x) (1+x)^{-m-1}.
  const double c = n * (n - 2.0), m = 0.5 * (n - 2.0), q = (n + 2.0) / (n - 2.0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = 1e-3 * std::pow(r_max / 1e-3, i / (samples - 1.0));
    const double x = r * r / c, w = 1.0 + x;
    const double g = m * (1.0 - x) * std::pow(w, -m - 1.0);
    const double gx = m * (-std::pow(w, -m - 1.0) - (m + 1.0) * (1.0 - x) * std::pow(w, -m - 2.0));
    const double gxx = m * (2.0 * (m + 1.0) * std::pow(w, -m - 2.0) +
                            (m + 1.0) * (m + 2.0) * (1.0 - x) * std::pow(w, -m - 3.0));
    const double lap = 4.0 * x / c * gxx + 2.0 * n / c * gx;
    const double rhs = q * std::pow(w, -2.0) * g;
    worst = std::max(worst, std::abs(lap + rhs) / (std::abs(lap) + std::abs(rhs)));
  }
  return worst;
}

ExpansionReport check_kernel(const RadialProfile& profile) {
  const auto r = kernel_residuals(profile);
  ExpansionReport rep;
  rep.name = "kernel";
  rep.sample_label = "route";
  rep.metrics.push_back(at_most_metric("finite_difference_residual", r.finite_difference, 1e-4));
  rep.metrics.push_back(at_most_metric("ode_derivative_residual", r.ode_derivatives, 1e-6));
  rep.metrics.push_back(at_most_metric("translation_residual", r.translation, 1e-4));
  if (profile.params().is_symmetric_point()) {
    rep.metrics.push_back(at_most_metric("closed_form_residual", kernel_residual_closed_form(profile.params().n),
                                         1e-6));
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------- scaling table

std::string to_string(ScalingRow row) {
  switch (row) {
    case ScalingRow::U1: return "u1";
    case ScalingRow::U1Tilde: return "u1_tilde";
    case ScalingRow::U2: return "u2";
    case ScalingRow::V1: return "v1";
    case ScalingRow::V1Tilde: return "v1_tilde";
    case ScalingRow::V2: return "v2";
  }
  return "?";
}

ScalingRow parse_scaling_row(const std::string& text) {
  for (ScalingRow r : {ScalingRow::U1, ScalingRow::U1Tilde, ScalingRow::U2, ScalingRow::V1, ScalingRow::V1Tilde,
                       ScalingRow::V2}) {
    if (to_string(r) == text) return r;
  }
  throw DomainError("unknown scaling row " + text);
}

namespace {

/// delta^{-a} (1 + |x-xi|^2/delta^2)^{-b/2}
struct RowModel {
  double a, b;
};

RowModel row_model(const ProblemParams& pp, ScalingRow row) {
  const int n = pp.n;
  const double su = n / (pp.q + 1.0), sv = n / (pp.p + 1.0), bt = (n - 2) * pp.p;
  switch (row) {
    case ScalingRow::U1: return {su, n - 2.0};
    case ScalingRow::U1Tilde: return {su, bt - 2.0};
    case ScalingRow::U2: return {sv, n - 2.0};
    case ScalingRow::V1: return {su - 1.0, n - 3.0};
    case ScalingRow::V1Tilde: return {su - 1.0, bt - 3.0};
    case ScalingRow::V2: return {sv - 1.0, n - 3.0};
  }
  return {0.0, 0.0};
}

}  // namespace

ScalingExpectation scaling_expectation(const ProblemParams& pp, ScalingRow row, double t) {
  if (!(t > 0.0)) throw DomainError("scaling power t must be positive");
  const double n = pp.n, p1 = pp.p + 1.0, q1 = pp.q + 1.0, p = pp.p;
  const auto model = row_model(pp, row);
  if (!(model.b > 0.0)) throw DomainError("scaling row has no decay for these exponents");
  const double tc = n / model.b;
  const double rel = (t - tc) / tc;
  const std::string regime = std::abs(rel) < 1e-12 ? "critical" : (t < tc ? "below" : "above");
  double below = 0.0, crit = 0.0, above = 0.0;
  switch (row) {
    case ScalingRow::U1:
      below = t * n / p1, crit = n * (1.0 - n / ((n - 2.0) * q1)), above = n - n * t / q1;
      break;
    case ScalingRow::U1Tilde:
      below = t * p * n / q1, crit = n * (1.0 - n / (((n - 2.0) * p - 2.0) * q1)), above = n - n * t / q1;
      break;
    case ScalingRow::U2:
      below = t * n / q1, crit = n * (1.0 - n / ((n - 2.0) * p1)), above = n - n * t / p1;
      break;
    case ScalingRow::V1:
      below = t * n / p1, crit = n * n / ((n - 3.0) * p1), above = n - t * (n / q1 - 1.0);
      break;
    case ScalingRow::V1Tilde:
      below = t * p * n / q1, crit = n * n / (((n - 2.0) * p - 3.0) * p1), above = n - t * (n / q1 - 1.0);
      break;
    case ScalingRow::V2:
      below = t * n / q1, crit = n * n / ((n - 3.0) * q1), above = n - t * (n / p1 - 1.0);
      break;
  }
  if (regime == "below") return {regime, below, false};
  if (regime == "critical") return {regime, crit, true};
  return {regime, above, false};
}

double scaling_integral(const ProblemParams& pp, ScalingRow row, double t, double delta, double R) {
  if (!(delta > 0.0 && R > 0.0)) throw DomainError("scaling integral needs positive delta and R");
  const int n = pp.n;
  const auto model = row_model(pp, row);
  // x - xi = delta * rho.
  auto f = [&](double rho) { return std::pow(rho, n - 1) * std::pow(1.0 + rho * rho, -0.5 * model.b * t); };
  std::vector<double> brk{0.0};
  for (double b : geometric_breaks(1.0 / 64.0, R / delta, std::sqrt(2.0))) brk.push_back(b);
  return sphere_area(n - 1) * std::pow(delta, n - model.a * t) * gauss_panels(f, brk, 30);
}

ExpansionReport check_scaling_table(const ProblemParams& pp, ScalingRow row, double t,
                                    const std::vector<double>& deltas) {
  require_deltas(deltas, 2);
  const auto expect = scaling_expectation(pp, row, t);
  ExpansionReport rep;
  rep.name = "scaling_table_" + to_string(row);
  rep.sample_label = "delta";
  rep.samples = deltas;
  std::vector<double> vals, reduced;
  for (double d : deltas) {
    const double v = scaling_integral(pp, row, t, d);
    vals.push_back(v);
    reduced.push_back(expect.log_corrected ? v / std::abs(std::log(d)) : v);
  }
  rep.add_series("integral", vals);
  rep.add_series("reduced", reduced);
  // Local slope over the two smallest deltas, where the lower-order terms of the integral are smallest.
  const std::size_t m = deltas.size();
  const double slope = std::log(reduced[m - 2] / reduced[m - 1]) / std::log(deltas[m - 2] / deltas[m - 1]);
  rep.add_series("least_squares_slope", {loglog_slope(deltas, reduced)});
  const std::string label = "slope_" + expect.regime;
  if (std::abs(expect.exponent) < 1e-12) {
    rep.metrics.push_back(absolute_metric(label, slope, 0.0, 0.02));
  } else {
    rep.metrics.push_back(relative_metric(label, slope, expect.exponent, 0.02));
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------- nonlinearity expansion

FTaylorResult f_taylor_ratios(double exponent, double shift, const std::vector<double>& t_samples, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.1)) throw DomainError("epsilon must lie in (0, 0.1]");
  FTaylorResult res;
  const double e = exponent, s = shift * epsilon;
  for (double tv : t_samples) {
    if (tv == 0.0) throw DomainError("t samples must avoid 0");
    const double a = std::abs(tv), L = std::log(a), x = s * L;
    // f_eps - f_0 - s f_0 log|t| = f_0 (e^x - 1 - x).
    const double xi = std::copysign(std::pow(a, e), tv) * (std::expm1(x) - x) / (epsilon * epsilon);
    const double xi_bound = 0.5 * (std::pow(a, e) + std::pow(a, e + s)) * L * L;
    const double eta = std::pow(a, e - 1.0) * (e * (std::expm1(x) - x) + s * std::expm1(x)) / (epsilon * epsilon);
    const double eta_bound =
        2.0 * (e + 1.0) * (std::pow(a, e - 1.0) + std::pow(a, e - 1.0 + s)) * (std::abs(L) + L * L);
    auto ratio = [](double v, double b) {
      if (b == 0.0) return v == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      return std::abs(v) / b;
    };
    res.xi_ratio = std::max(res.xi_ratio, ratio(xi, xi_bound));
    res.eta_ratio = std::max(res.eta_ratio, ratio(eta, eta_bound));
  }
  return res;
}

std::vector<double> default_t_samples(int per_sign) {
  std::vector<double> out;
  for (int i = 0; i < per_sign; ++i) {
    const double t = 0.1 * std::pow(100.0, i / (per_sign - 1.0));
    out.push_back(-t);
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExpansionReport check_f_taylor(const ProblemParams& pp, const std::vector<double>& t_samples,
                               const std::vector<double>& eps_list) {
  if (eps_list.empty()) throw DomainError("no epsilon samples");
  ExpansionReport rep;
  rep.name = "f_taylor";
  rep.sample_label = "epsilon";
  rep.samples = eps_list;
  std::vector<double> xq, eq, xp, ep;
  for (double eps : eps_list) {
    const auto rq = f_taylor_ratios(pp.q, pp.beta, t_samples, eps);
    const auto rp = f_taylor_ratios(pp.p, pp.alpha, t_samples, eps);
    xq.push_back(rq.xi_ratio);
    eq.push_back(rq.eta_ratio);
    xp.push_back(rp.xi_ratio);
    ep.push_back(rp.eta_ratio);
  }
  rep.add_series("xi_ratio_q", xq);
  rep.add_series("eta_ratio_q", eq);
  rep.add_series("xi_ratio_p", xp);
  rep.add_series("eta_ratio_p", ep);
  auto mx = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  rep.metrics.push_back(at_most_metric("xi_ratio_q_max", mx(xq), 1.0));
  rep.metrics.push_back(at_most_metric("eta_ratio_q_max", mx(eq), 1.0));
  rep.metrics.push_back(at_most_metric("xi_ratio_p_max", mx(xp), 1.0));
  rep.metrics.push_back(at_most_metric("eta_ratio_p_max", mx(ep), 1.0));
  rep.finalize();
  return rep;
}

}  // namespace lanemden
