#include "lanemden/radial_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <boost/numeric/odeint.hpp>

#include "lanemden/errors.hpp"
#include "lanemden/fitting.hpp"

namespace lanemden {

namespace odeint = boost::numeric::odeint;

std::string to_string(ShotClass c) {
  switch (c) {
    case ShotClass::UHitsZero: return "U_HITS_ZERO";
    case ShotClass::VHitsZero: return "V_HITS_ZERO";
    case ShotClass::Decaying: return "DECAYING";
    case ShotClass::Diverging: return "DIVERGING";
  }
  return "?";
}

double eval_terms(const std::vector<PowerTerm>& terms, double r) {
  double s = 0.0;
  for (const auto& t : terms) s += t.coef * std::pow(r, -t.exponent);
  return s;
}

double eval_terms_derivative(const std::vector<PowerTerm>& terms, double r) {
  double s = 0.0;
  for (const auto& t : terms) s -= t.exponent * t.coef * std::pow(r, -t.exponent - 1.0);
  return s;
}

namespace {

using State = std::array<double, 4>;  // U, P = rU', V, Q = rV' as functions of t = log r

double spow(double x, double e) { return x >= 0.0 ? std::pow(x, e) : -std::pow(-x, e); }

struct RadialSystem {
  int n;
  double p, q;
  void operator()(const State& x, State& dxdt, double t) const {
    const double e2t = std::exp(2.0 * t);
    dxdt[0] = x[1];
    dxdt[1] = -(n - 2) * x[1] - e2t * spow(x[2], p);
    dxdt[2] = x[3];
    dxdt[3] = -(n - 2) * x[3] - e2t * spow(x[0], q);
  }
};

/// Fourth-order Taylor start at radius r.
State taylor_start(const ProblemParams& pp, double v0, double r) {
  const int n = pp.n;
  const double a2 = -std::pow(v0, pp.p) / (2.0 * n);
  const double b2 = -1.0 / (2.0 * n);
  const double a4 = -pp.p * std::pow(v0, pp.p - 1.0) * b2 / (4.0 * (n + 2));
  const double b4 = -pp.q * a2 / (4.0 * (n + 2));
  const double r2 = r * r;
  return {1.0 + a2 * r2 + a4 * r2 * r2, 2.0 * a2 * r2 + 4.0 * a4 * r2 * r2,
          v0 + b2 * r2 + b4 * r2 * r2, 2.0 * b2 * r2 + 4.0 * b4 * r2 * r2};
}

using Stepper = odeint::runge_kutta_fehlberg78<State>;

struct Event {
  ShotClass cls = ShotClass::Decaying;
  double t = 0.0;
};

/// Checks a completed step [t0, t1] for events; returns true if one happened.
bool detect_event(const State& x0, const State& x1, double t0, double t1, double guard, Event& ev) {
  double fu = 2.0, fv = 2.0;
  if (x1[0] <= 0.0) fu = x0[0] / (x0[0] - x1[0]);
  if (x1[2] <= 0.0) fv = x0[2] / (x0[2] - x1[2]);
  if (fu <= 1.0 || fv <= 1.0) {
    const bool u_first = fu <= fv;
    ev.cls = u_first ? ShotClass::UHitsZero : ShotClass::VHitsZero;
    ev.t = t0 + std::min(fu, fv) * (t1 - t0);
    return true;
  }
  if (x1[0] + x1[2] > guard || !std::isfinite(x1[0] + x1[1] + x1[2] + x1[3])) {
    ev.cls = ShotClass::Diverging;
    ev.t = t1;
    return true;
  }
  return false;
}

/// Integrates from t to t_end with error control; stops at the first event.
bool advance(const RadialSystem& sys, State& x, double& t, double t_end, double& dt, double tol,
             double guard, Event& ev) {
  auto controlled = odeint::make_controlled(tol * 1e-12, tol, Stepper());
  int failures = 0;
  while (t_end - t > 1e-12) {
    const double dt_natural = dt;
    const bool clipped = t + dt >= t_end;
    if (clipped) dt = t_end - t;
    const State x_old = x;
    const double t_old = t;
    if (controlled.try_step(sys, x, t, dt) == odeint::success) {
      failures = 0;
      if (detect_event(x_old, x, t_old, t, guard, ev)) return true;
      if (clipped) dt = std::max(dt, dt_natural);
    } else if (++failures > 500 || dt < 1e-14) {
      throw StepFailure("adaptive integrator cannot meet tolerance at log r = " + std::to_string(t));
    }
  }
  return false;
}

ShotClass classify(const ProblemParams& pp, double v0, const GroundStateOptions& opt) {
  const RadialSystem sys{pp.n, pp.p, pp.q};
  State x = taylor_start(pp, v0, opt.r_start);
  double t = std::log(opt.r_start);
  double dt = 1e-3;
  Event ev;
  const double guard = opt.divergence_guard * (1.0 + v0);
  if (advance(sys, x, t, std::log(opt.classify_r), dt, opt.ode_tol, guard, ev)) return ev.cls;
  return ShotClass::Decaying;
}

struct GridRun {
  std::vector<double> t;
  std::vector<State> x;
  Event event;
  bool stopped = false;
};

GridRun run_grid(const ProblemParams& pp, double v0, double r_max, const GroundStateOptions& opt) {
  const RadialSystem sys{pp.n, pp.p, pp.q};
  GridRun out;
  State x = taylor_start(pp, v0, opt.r_start);
  const double t0 = std::log(opt.r_start);
  const int steps = static_cast<int>(std::ceil((std::log(r_max) - t0) / opt.grid_h - 1e-9));
  double t = t0;
  double dt = 1e-3;
  const double guard = opt.divergence_guard * (1.0 + v0);
  out.t.push_back(t0);
  out.x.push_back(x);
  for (int k = 1; k <= steps; ++k) {
    const double t_next = t0 + k * opt.grid_h;
    if (advance(sys, x, t, t_next, dt, opt.ode_tol, guard, out.event)) {
      out.stopped = true;
      break;
    }
    t = t_next;
    out.t.push_back(t_next);
    out.x.push_back(x);
  }
  return out;
}

}  // namespace

ShotResult shoot(const ProblemParams& params, double v0, double r_max, double tol) {
  if (!(v0 > 0.0)) throw DomainError("v0 must be positive");
  if (!(r_max > 1.0)) throw DomainError("r_max must exceed 1");
  if (!(tol > 0.0 && tol <= 1e-4)) throw DomainError("tol must lie in (0, 1e-4]");
  if (params.case_tag == ExponentCase::Border) throw DomainError("BORDER case p = n/(n-2) is not supported");
  GroundStateOptions opt;
  opt.ode_tol = tol;
  const GridRun run = run_grid(params, v0, r_max, opt);
  ShotResult res;
  res.cls = run.stopped ? run.event.cls : ShotClass::Decaying;
  res.r_event = run.stopped ? std::exp(run.event.t) : r_max;
  for (std::size_t k = 0; k < run.t.size(); ++k) {
    const double r = std::exp(run.t[k]);
    res.r.push_back(r);
    res.U.push_back(run.x[k][0]);
    res.dU.push_back(run.x[k][1] / r);
    res.V.push_back(run.x[k][2]);
    res.dV.push_back(run.x[k][3] / r);
  }
  return res;
}

TheoryExponents theory_exponents(const ProblemParams& pp) {
  const double n2 = pp.n - 2.0;
  const double other = n2 * pp.p - 2.0;
  TheoryExponents e{};
  if (pp.case_tag == ExponentCase::Sub) {
    e.U_lead = other;
    e.U_next = n2;
  } else {
    e.U_lead = n2;
    e.U_next = other;
  }
  e.V_lead = n2;
  e.V_next = e.U_lead * pp.q - 2.0;
  return e;
}

std::pair<double, double> default_fit_window(const ProblemParams& params, double r_max) {
  const double span = params.case_tag == ExponentCase::Sub ? 100.0 : 10.0;
  return {r_max / span, r_max};
}

namespace {

/// Leading exponent fitted freely with the secondary exponent held fixed.
double free_exponent(const std::vector<double>& r, const std::vector<double>& y, double lead, double next) {
  const double half = std::min(0.3, 0.75 * std::abs(next - lead));
  auto cost = [&](double e) {
    std::vector<double> exps{e};
    if (std::abs(next - e) > 1e-6) exps.push_back(next);
    return power_lsq(r, y, exps).sumsq;
  };
  return golden_section_min(cost, lead - half, lead + half);
}

std::vector<double> model_exponents(double lead, double next) {
  if (std::abs(next - lead) < 0.05) return {lead};
  return {lead, next};
}

}  // namespace

TailFit fit_tail(const RadialProfile& profile, double r_lo, double r_hi, double max_residual) {
  if (!(r_lo > 0.0) || r_hi > profile.r_max() * (1.0 + 1e-12) || r_hi / r_lo < 10.0 * (1.0 - 1e-12)) {
    throw WindowTooNarrow("tail window must span at least one decade inside the sampled range");
  }
  const auto th = theory_exponents(profile.params());
  const int m = 200;
  std::vector<double> r(m), u(m), v(m);
  for (int i = 0; i < m; ++i) {
    r[i] = r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (m - 1));
    const auto s = profile.evaluate(std::min(r[i], profile.r_max()));
    u[i] = s.U;
    v[i] = s.V;
  }
  TailFit fit;
  fit.r_lo = r_lo;
  fit.r_hi = r_hi;
  fit.exp_U_theory = th.U_lead;
  fit.exp_V_theory = th.V_lead;
  const auto eu = model_exponents(th.U_lead, th.U_next);
  const auto ev = model_exponents(th.V_lead, th.V_next);
  const auto fu = power_lsq(r, u, eu);
  const auto fv = power_lsq(r, v, ev);
  fit.U_terms = fu.terms;
  fit.V_terms = fv.terms;
  fit.a = fu.terms.front().coef;
  fit.b = fv.terms.front().coef;
  fit.fit_residual = std::max(fu.max_rel, fv.max_rel);
  fit.exp_U = free_exponent(r, u, th.U_lead, th.U_next);
  fit.exp_V = free_exponent(r, v, th.V_lead, th.V_next);
  if (fit.fit_residual > max_residual) throw PoorFit("tail model deviates by " + std::to_string(fit.fit_residual));
  if (!(fit.a > 0.0) || !(fit.b > 0.0)) throw PoorFit("tail coefficients must be positive");
  return fit;
}

void RadialProfile::fill_second_derivatives() {
  const int n = params_.n;
  const double p = params_.p, q = params_.q;
  const std::size_t m = t_.size();
  Pt_.resize(m);
  Ptt_.resize(m);
  Qt_.resize(m);
  Qtt_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double e2t = std::exp(2.0 * t_[k]);
    const double vp = spow(V_[k], p), uq = spow(U_[k], q);
    const double vp1 = std::pow(std::abs(V_[k]), p - 1.0), uq1 = std::pow(std::abs(U_[k]), q - 1.0);
    Pt_[k] = -(n - 2) * P_[k] - e2t * vp;
    Qt_[k] = -(n - 2) * Q_[k] - e2t * uq;
    Ptt_[k] = -(n - 2) * Pt_[k] - e2t * (2.0 * vp + p * vp1 * Q_[k]);
    Qtt_[k] = -(n - 2) * Qt_[k] - e2t * (2.0 * uq + q * uq1 * P_[k]);
  }
}

RadialProfile find_ground_state(const ProblemParams& params, const GroundStateOptions& opt) {
  require_solvable(params);
  if (!(opt.ode_tol > 0.0 && opt.ode_tol <= 1e-4)) throw DomainError("ode_tol must lie in (0, 1e-4]");
  if (!(opt.r_max > 10.0)) throw DomainError("r_max must exceed 10");

  // Coarse logarithmic sweep to find two neighbours with different outcomes.
  const int sweep = 24;
  double lo = 0.0, hi = 0.0;
  ShotClass c_lo = ShotClass::Decaying;
  bool found = false;
  double exact = 0.0;
  double prev_v = 0.0;
  ShotClass prev_c = ShotClass::Decaying;
  for (int k = 0; k <= sweep && !found; ++k) {
    const double v = std::pow(10.0, -3.0 + 6.0 * k / sweep);
    const ShotClass c = classify(params, v, opt);
    if (c == ShotClass::Decaying) {
      exact = v;
      found = true;
      break;
    }
    if (k > 0 && c != prev_c && c != ShotClass::Diverging && prev_c != ShotClass::Diverging) {
      lo = prev_v;
      hi = v;
      c_lo = prev_c;
      found = true;
    }
    prev_v = v;
    prev_c = c;
  }
  if (!found) throw BracketingFailure("no change of classification for v0 in [1e-3, 1e3]");

  int steps = 0;
  if (exact > 0.0) {
    lo = hi = exact;
  } else {
    for (; steps < 400; ++steps) {
      const double mid = lo + 0.5 * (hi - lo);
      if (!(mid > lo && mid < hi)) break;
      const ShotClass c = classify(params, mid, opt);
      if (c == ShotClass::Decaying) {
        lo = hi = mid;
        break;
      }
      if (c == c_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  const double v0 = lo + 0.5 * (hi - lo);

  GridRun mid = run_grid(params, v0, opt.r_max, opt);
  std::size_t valid = mid.t.size();
  if (hi > lo) {
    const GridRun a = run_grid(params, lo, opt.r_max, opt);
    const GridRun b = run_grid(params, hi, opt.r_max, opt);
    valid = std::min({valid, a.t.size(), b.t.size()});
    for (std::size_t k = 0; k < valid; ++k) {
      const double du = std::abs(a.x[k][0] - b.x[k][0]) / std::abs(mid.x[k][0]);
      const double dv = std::abs(a.x[k][2] - b.x[k][2]) / std::abs(mid.x[k][2]);
      if (du > 1e-6 || dv > 1e-6) {
        valid = k;
        break;
      }
    }
  }
  if (valid < 2) throw MonotonicityViolation("trajectory not resolved beyond the start radius");

  RadialProfile prof;
  prof.params_ = params;
  prof.v0_ = v0;
  prof.r_start_ = opt.r_start;
  prof.ode_tol_ = opt.ode_tol;
  prof.h_ = opt.grid_h;
  prof.bisection_steps_ = steps;
  for (std::size_t k = 0; k < valid; ++k) {
    prof.t_.push_back(mid.t[k]);
    prof.U_.push_back(mid.x[k][0]);
    prof.P_.push_back(mid.x[k][1]);
    prof.V_.push_back(mid.x[k][2]);
    prof.Q_.push_back(mid.x[k][3]);
  }
  prof.r_max_ = std::exp(prof.t_.back());
  prof.r_valid_ = (valid == mid.t.size() && !mid.stopped) ? std::max(prof.r_max_, opt.r_max) : prof.r_max_;
  for (std::size_t k = 0; k < valid; ++k) {
    if (!(prof.U_[k] > 0.0 && prof.V_[k] > 0.0 && prof.P_[k] < 0.0 && prof.Q_[k] < 0.0)) {
      throw MonotonicityViolation("profile not positive and decreasing at r = " +
                                  std::to_string(std::exp(prof.t_[k])));
    }
  }
  prof.fill_second_derivatives();
  const auto [wlo, whi] = default_fit_window(params, prof.r_max_);
  prof.tail_ = fit_tail(prof, wlo, whi, opt.fit_tol);
  return prof;
}

std::vector<double> RadialProfile::grid() const {
  std::vector<double> g{0.0};
  for (double t : t_) g.push_back(std::exp(t));
  return g;
}

std::vector<RadialSample> RadialProfile::samples() const {
  std::vector<RadialSample> out{{1.0, 0.0, v0_, 0.0}};
  for (std::size_t k = 0; k < t_.size(); ++k) {
    const double r = std::exp(t_[k]);
    out.push_back({U_[k], P_[k] / r, V_[k], Q_[k] / r});
  }
  return out;
}

double RadialProfile::hermite(const std::vector<double>& f, const std::vector<double>& df,
                              const std::vector<double>& d2f, std::size_t k, double s) const {
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double h = h_, h2 = h_ * h_;
  const double H0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
  const double H1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
  const double H2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
  const double H3 = 0.5 * s3 - s4 + 0.5 * s5;
  const double H4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
  const double H5 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
  return H0 * f[k] + H1 * h * df[k] + H2 * h2 * d2f[k] + H3 * h2 * d2f[k + 1] + H4 * h * df[k + 1] +
         H5 * f[k + 1];
}

RadialSample RadialProfile::evaluate(double r) const {
  if (!(r > 0.0)) return {1.0, 0.0, v0_, 0.0};
  if (r < r_start_) {
    const State x = taylor_start(params_, v0_, r);
    return {x[0], x[1] / r, x[2], x[3] / r};
  }
  if (r > r_max_) {
    return {eval_terms(tail_.U_terms, r), eval_terms_derivative(tail_.U_terms, r),
            eval_terms(tail_.V_terms, r), eval_terms_derivative(tail_.V_terms, r)};
  }
  const double t = std::log(r);
  const double pos = (t - t_.front()) / h_;
  std::size_t k = pos <= 0.0 ? 0 : static_cast<std::size_t>(pos);
  if (k + 1 >= t_.size()) k = t_.size() - 2;
  const double s = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
  const double u = hermite(U_, P_, Pt_, k, s);
  const double pu = hermite(P_, Pt_, Ptt_, k, s);
  const double v = hermite(V_, Q_, Qt_, k, s);
  const double qv = hermite(Q_, Qt_, Qtt_, k, s);
  return {u, pu / r, v, qv / r};
}

double RadialProfile::ode_residual() const {
  const int n = params_.n;
  const double eps = std::numeric_limits<double>::epsilon();
  double worst = 0.0;
  auto d6 = [&](const std::vector<double>& f, std::size_t k) {
    return (-f[k - 3] + 9.0 * f[k - 2] - 45.0 * f[k - 1] + 45.0 * f[k + 1] - 9.0 * f[k + 2] + f[k + 3]) /
           (60.0 * h_);
  };
  for (std::size_t k = 3; k + 3 < t_.size(); ++k) {
    const double e2t = std::exp(2.0 * t_[k]);
    // Scales include the rounding floor of the difference stencil.
    const double floor_u = 100.0 * eps * std::abs(U_[k]) / h_;
    const double floor_v = 100.0 * eps * std::abs(V_[k]) / h_;
    const double su = std::abs(d6(U_, k) - P_[k]) / (std::abs(P_[k]) + floor_u);
    const double sv = std::abs(d6(V_, k) - Q_[k]) / (std::abs(Q_[k]) + floor_v);
    const double scale_p = std::abs((n - 2) * P_[k]) + e2t * std::pow(V_[k], params_.p);
    const double scale_q = std::abs((n - 2) * Q_[k]) + e2t * std::pow(U_[k], params_.q);
    const double rp = std::abs(d6(P_, k) - Pt_[k]) / scale_p;
    const double rq = std::abs(d6(Q_, k) - Qt_[k]) / scale_q;
    worst = std::max({worst, su, sv, rp, rq});
  }
  return worst;
}

double RadialProfile::derivative_bound() const {
  const double su = params_.n / (params_.q + 1.0);
  double sup = 0.0;
  for (std::size_t k = 0; k < t_.size(); ++k) sup = std::max(sup, std::abs(su * U_[k] + P_[k]) / U_[k]);
  return sup;
}

}  // namespace lanemden
