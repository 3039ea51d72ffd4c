#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lanemden/config.hpp"
#include "lanemden/verify.hpp"

namespace lanemden {

enum ExitCode : int { kExitOk = 0, kExitCheckFailure = 1, kExitUsage = 2, kExitNumerical = 3 };

/// Runs the command line `args` (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_ground_state(const RunConfig& cfg, std::ostream& out);
int cmd_constants(const RunConfig& cfg, std::ostream& out);
int cmd_reduced_energy(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_report(const RunConfig& cfg, std::ostream& out);

/// Concatenates reports into one record; metric and series names get "<prefix>." prepended.
ExpansionReport merge_reports(const std::string& name, const std::vector<ExpansionReport>& parts,
                              const std::vector<std::string>& prefixes);

}  // namespace lanemden
