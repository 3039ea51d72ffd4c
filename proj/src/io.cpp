#include "lanemden/io.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lanemden {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string make_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
  s += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
    s += "\n";
  }
  return s;
}

Json config_json(const RunConfig& cfg) {
  Json j = Json::object();
  j["n"] = cfg.n;
  j["p"] = cfg.p_text;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["deltas"] = cfg.deltas;
  j["eps"] = cfg.eps;
  j["taylor_eps"] = cfg.taylor_eps;
  j["d"] = cfg.d;
  j["ode_tol"] = cfg.ode_tol;
  j["quad_tol"] = cfg.quad_tol;
  j["fit_tol"] = cfg.fit_tol;
  j["r_max"] = cfg.r_max;
  j["level"] = cfg.level;
  j["out"] = cfg.out;
  j["checks"] = cfg.selected_checks();
  j["threads"] = cfg.threads;
  j["seed_free"] = cfg.seed_free;
  j["b_mode"] = cfg.b_mode;
  j["b_delta"] = cfg.b_delta;
  j["energy_samples"] = cfg.energy_samples;
  return j;
}

Json envelope(const std::string& kind, const RunConfig& cfg) {
  Json j = Json::object();
  j["kind"] = kind;
  j["tool_version"] = kToolVersion;
  j["config"] = config_json(cfg);
  return j;
}

namespace {

Json terms_json(const std::vector<PowerTerm>& terms) {
  Json a = Json::array();
  for (const auto& t : terms) a.push_back({{"coef", t.coef}, {"exponent", t.exponent}});
  return a;
}

}  // namespace

Json profile_json(const RadialProfile& prof) {
  const auto& pp = prof.params();
  const auto& t = prof.tail();
  const auto cond = check_condition_p(pp);
  Json j = Json::object();
  j["n"] = pp.n;
  j["p"] = pp.p;
  j["q"] = pp.q;
  j["case"] = to_string(pp.case_tag);
  j["condition_p"] = to_string(cond.label);
  j["p_n"] = cond.p_n;
  j["v0"] = prof.v0();
  j["bisection_steps"] = prof.bisection_steps();
  j["r_start"] = prof.r_start();
  j["r_max"] = prof.r_max();
  j["r_valid"] = prof.r_valid();
  j["ode_tol"] = prof.ode_tol();
  j["ode_residual"] = prof.ode_residual();
  j["tail"] = {{"a", t.a},
               {"b", t.b},
               {"exp_U", t.exp_U},
               {"exp_V", t.exp_V},
               {"exp_U_theory", t.exp_U_theory},
               {"exp_V_theory", t.exp_V_theory},
               {"r_lo", t.r_lo},
               {"r_hi", t.r_hi},
               {"fit_residual", t.fit_residual},
               {"U_terms", terms_json(t.U_terms)},
               {"V_terms", terms_json(t.V_terms)}};
  return j;
}

Json constants_json(const EnergyConstants& k) {
  Json j = Json::object();
  j["A1"] = k.A1;
  j["A2"] = k.A2;
  j["B1"] = k.B1;
  j["B2"] = k.B2;
  j["C1"] = k.C1;
  j["C2"] = k.C2;
  j["D1"] = k.D1;
  j["D2"] = k.D2;
  j["errors"] = {{"A1", k.err_A1}, {"A2", k.err_A2}, {"B1", k.err_B1}, {"B2", k.err_B2},
                 {"C1", k.err_C1}, {"C2", k.err_C2}, {"D1", k.err_D1}, {"D2", k.err_D2}};
  j["b_mode"] = to_string(k.b_mode);
  j["b_delta"] = k.delta_used;
  j["identity_deviation"] = k.identity_deviation();
  return j;
}

Json report_json(const ExpansionReport& rep) {
  Json j = Json::object();
  j["name"] = rep.name;
  j["samples"] = {{"label", rep.sample_label}, {"values", rep.samples}};
  if (!rep.metrics.empty()) {
    // Headline fields mirror the first metric.
    const auto& m = rep.metrics.front();
    j["fit"] = m.measured;
    j["target"] = m.target;
    j["deviation"] = m.deviation;
  }
  Json metrics = Json::array();
  for (const auto& m : rep.metrics) {
    metrics.push_back({{"name", m.name},
                       {"rule", m.rule},
                       {"measured", m.measured},
                       {"target", m.target},
                       {"deviation", m.deviation},
                       {"tolerance", m.tolerance},
                       {"verdict", m.pass ? "PASS" : "FAIL"}});
  }
  j["metrics"] = metrics;
  Json series = Json::object();
  for (const auto& [k, v] : rep.series) series[k] = v;
  j["series"] = series;
  j["verdict"] = rep.pass ? "PASS" : "FAIL";
  return j;
}

std::string report_csv(const ExpansionReport& rep) {
  std::vector<std::string> header{rep.sample_label.empty() ? "sample" : rep.sample_label};
  std::vector<const std::vector<double>*> cols;
  for (const auto& [k, v] : rep.series) {
    if (v.size() == rep.samples.size()) {
      header.push_back(k);
      cols.push_back(&v);
    }
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    std::vector<double> row{rep.samples[i]};
    for (const auto* c : cols) row.push_back((*c)[i]);
    rows.push_back(row);
  }
  return make_csv(header, rows);
}

}  // namespace lanemden
