#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lanemden {

/// Malformed configuration: unknown key, unparsable or out-of-range value.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Names of the verification checks, in execution order.
const std::vector<std::string>& all_check_names();

struct RunConfig {
  int n = 4;
  std::string p_text = "3";
  double p = 3.0;
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<double> deltas{0.04, 0.02, 0.01};
  std::vector<double> eps{0.025, 0.0125, 0.00625};
  std::vector<double> taylor_eps{0.1, 0.01};
  double d = 0.2;
  double ode_tol = 1e-12;
  double quad_tol = 1e-3;
  double fit_tol = 0.05;
  double r_max = 1e4;
  int level = 1;
  std::string out = "out";
  std::vector<std::string> checks;  ///< empty: all checks
  int threads = 1;
  bool seed_free = false;
  std::string b_mode = "limit";
  double b_delta = 0.01;
  int energy_samples = 200;

  /// Applies one key=value setting; throws ConfigError.
  void set(const std::string& key, const std::string& value);
  /// Throws ConfigError when invariants fail.
  void validate() const;
  std::vector<std::string> selected_checks() const;
};

/// Reads "key = value" lines; '#' starts a comment. Throws ConfigError.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Defaults, then the file, then explicit overrides; validated.
RunConfig resolve_config(const std::string& config_path, const std::map<std::string, std::string>& overrides);

}  // namespace lanemden
