#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "lanemden/config.hpp"
#include "lanemden/constants.hpp"
#include "lanemden/radial_ode.hpp"
#include "lanemden/verify.hpp"

namespace lanemden {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "lanemden 0.1.0";

/// Writes to a temporary sibling, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// JSON text with a trailing newline; non-finite numbers become null.
std::string dump_json(const Json& j);

/// 17 significant digits, '.' decimal point.
std::string format_number(double x);

/// CSV text: header line, then one row per record.
std::string make_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

Json config_json(const RunConfig& cfg);
/// Document skeleton with the tool version and the resolved config.
Json envelope(const std::string& kind, const RunConfig& cfg);

Json profile_json(const RadialProfile& profile);
Json constants_json(const EnergyConstants& k);
Json report_json(const ExpansionReport& rep);
/// CSV of a report's samples and sample-aligned series.
std::string report_csv(const ExpansionReport& rep);

}  // namespace lanemden
