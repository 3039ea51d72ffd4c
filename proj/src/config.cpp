#include "lanemden/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lanemden/params.hpp"

namespace lanemden {

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names{"boundary_loss", "cross_terms",  "phi_pairing", "gradient",
                                              "nonlinear",     "norm_orders",  "kernel",      "scaling_table",
                                              "f_taylor"};
  return names;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': cannot parse number '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': cannot parse integer '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split(v)) out.push_back(to_double(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "n") {
    n = to_int(key, v);
  } else if (key == "p") {
    try {
      p = parse_exponent(v);
    } catch (const std::exception& e) {
      throw ConfigError("key 'p': " + std::string(e.what()));
    }
    p_text = v;
  } else if (key == "alpha") {
    alpha = to_double(key, v);
  } else if (key == "beta") {
    beta = to_double(key, v);
  } else if (key == "deltas") {
    deltas = to_list(key, v);
  } else if (key == "eps") {
    eps = to_list(key, v);
  } else if (key == "taylor_eps") {
    taylor_eps = to_list(key, v);
  } else if (key == "d") {
    d = to_double(key, v);
  } else if (key == "ode_tol") {
    ode_tol = to_double(key, v);
  } else if (key == "quad_tol") {
    quad_tol = to_double(key, v);
  } else if (key == "fit_tol") {
    fit_tol = to_double(key, v);
  } else if (key == "r_max") {
    r_max = to_double(key, v);
  } else if (key == "level") {
    level = to_int(key, v);
  } else if (key == "out") {
    if (v.empty()) throw ConfigError("key 'out': empty path");
    out = v;
  } else if (key == "checks") {
    checks = split(v);
  } else if (key == "threads") {
    threads = to_int(key, v);
  } else if (key == "seed_free") {
    seed_free = to_bool(key, v);
  } else if (key == "b_mode") {
    b_mode = v;
  } else if (key == "b_delta") {
    b_delta = to_double(key, v);
  } else if (key == "energy_samples") {
    energy_samples = to_int(key, v);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void RunConfig::validate() const {
  if (n < 4) throw ConfigError("n must be at least 4");
  if (alpha < 0.0 || beta < 0.0) throw ConfigError("alpha and beta must be nonnegative");
  for (double x : {ode_tol, quad_tol, fit_tol}) {
    if (!(x > 0.0)) throw ConfigError("tolerances must be positive");
  }
  for (double x : deltas) {
    if (!(x > 0.0 && x <= 0.2)) throw ConfigError("delta samples must lie in (0, 0.2]");
  }
  for (const auto* list : {&eps, &taylor_eps}) {
    for (double x : *list) {
      if (!(x > 0.0 && x <= 0.1)) throw ConfigError("epsilon samples must lie in (0, 0.1]");
    }
  }
  if (!(d > 0.0)) throw ConfigError("d must be positive");
  if (!(r_max >= 100.0)) throw ConfigError("r_max must be at least 100");
  if (level < 0 || level > 6) throw ConfigError("level must lie in [0, 6]");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (b_mode != "limit" && b_mode != "delta") throw ConfigError("b_mode must be 'limit' or 'delta'");
  if (!(b_delta > 0.0 && b_delta <= 0.1)) throw ConfigError("b_delta must lie in (0, 0.1]");
  if (energy_samples < 2) throw ConfigError("energy_samples must be at least 2");
  const auto& names = all_check_names();
  for (const auto& c : checks) {
    if (std::find(names.begin(), names.end(), c) == names.end()) throw ConfigError("unknown check '" + c + "'");
  }
}

std::vector<std::string> RunConfig::selected_checks() const {
  if (checks.empty()) return all_check_names();
  std::vector<std::string> out;
  for (const auto& name : all_check_names()) {
    if (std::find(checks.begin(), checks.end(), name) != checks.end()) out.push_back(name);
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

RunConfig resolve_config(const std::string& config_path, const std::map<std::string, std::string>& overrides) {
  RunConfig cfg;
  if (!config_path.empty()) {
    for (const auto& [k, v] : read_config_file(config_path)) cfg.set(k, v);
  }
  for (const auto& [k, v] : overrides) cfg.set(k, v);
  cfg.validate();
  return cfg;
}

}  // namespace lanemden
