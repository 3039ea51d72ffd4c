#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lanemden/cli.hpp"
#include "lanemden/io.hpp"

using namespace lanemden;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("lanemden_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  return dir;
}

int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "lanemden");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("config layering") {
  const auto dir = scratch("cfg");
  fs::create_directories(dir);
  const auto file = dir / "run.cfg";
  std::ofstream(file) << "# comment\np = 2.5\nd = 0.3  # trailing\ndeltas = 0.04, 0.02\n";
  const auto cfg = resolve_config(file.string(), {{"d", "0.25"}});
  CHECK(cfg.p == 2.5);
  CHECK(cfg.d == 0.25);
  CHECK(cfg.deltas == std::vector<double>{0.04, 0.02});
  CHECK(cfg.selected_checks() == all_check_names());
  CHECK_THROWS_AS(resolve_config(file.string(), {{"bogus", "1"}}), ConfigError);
  CHECK_THROWS_AS(resolve_config("", {{"checks", "nope"}}), ConfigError);
  CHECK_THROWS_AS(resolve_config("", {{"level", "9"}}), ConfigError);
  CHECK_THROWS_AS(resolve_config(dir.string() + "/missing.cfg", {}), ConfigError);

  RunConfig c;
  c.set("checks", "kernel, boundary_loss");
  // Selection follows the fixed execution order.
  CHECK(c.selected_checks() == std::vector<std::string>{"boundary_loss", "kernel"});
}

TEST_CASE("exit codes") {
  const auto dir = scratch("codes").string();
  CHECK(run({"--out", dir, "ground-state", "--p", "2"}) == kExitUsage);
  CHECK(run({"--out", dir, "ground-state", "--p", "1.5"}) == kExitUsage);
  CHECK(run({"--out", dir, "ground-state", "--n", "3"}) == kExitUsage);
  CHECK(run({"--out", dir, "frobnicate"}) == kExitUsage);
  CHECK(run({"--out", dir, "report"}) == kExitUsage);
}

TEST_CASE("ground state output is deterministic") {
  const auto dir = scratch("gs");
  std::string text;
  REQUIRE(run({"--out", dir.string(), "ground-state", "--p", "3"}, &text) == kExitOk);
  CHECK(text.find("v0=1.000000") != std::string::npos);
  const auto csv1 = slurp(dir / "ground_state.csv");
  const auto js1 = slurp(dir / "ground_state.json");
  REQUIRE(run({"--out", dir.string(), "ground-state", "--p", "3"}) == kExitOk);
  CHECK(slurp(dir / "ground_state.csv") == csv1);
  CHECK(slurp(dir / "ground_state.json") == js1);
  const auto j = Json::parse(js1);
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["config"]["p"] == "3");
  // No temporary files survive the atomic writes.
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().string().find(".tmp") == std::string::npos);
}

TEST_CASE("verify with a selection, then report") {
  const auto dir = scratch("verify");
  REQUIRE(run({"--out", dir.string(), "verify", "--checks", "f_taylor,scaling_table"}) == kExitOk);
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir / "checks")) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"f_taylor.csv", "f_taylor.json", "scaling_table.csv", "scaling_table.json"});
  const auto summary = Json::parse(slurp(dir / "verify_summary.json"));
  CHECK(summary["rng_used"] == false);
  CHECK(summary["verdict"] == "PASS");
  REQUIRE(run({"--out", dir.string(), "report"}) == kExitOk);
  const auto report = Json::parse(slurp(dir / "report.json"));
  CHECK(report.dump().find("scaling_table") != std::string::npos);
}

TEST_CASE("reduced energy command") {
  const auto dir = scratch("re");
  std::string text;
  REQUIRE(run({"--out", dir.string(), "reduced-energy", "--p", "3"}, &text) == kExitOk);
  const auto j = Json::parse(slurp(dir / "reduced_energy.json"));
  CHECK(j.dump().find("d_star") != std::string::npos);
  CHECK(fs::exists(dir / "reduced_energy.csv"));
}

TEST_CASE("io helpers") {
  CHECK(std::stod(format_number(0.1)) == 0.1);
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(make_csv({"a", "b"}, {{1.0, 2.5}}) == "a,b\n1,2.5\n");
  const auto dir = scratch("atomic");
  write_atomic(dir / "x" / "f.txt", "hello");
  CHECK(slurp(dir / "x" / "f.txt") == "hello");
  write_atomic(dir / "x" / "f.txt", "bye");
  CHECK(slurp(dir / "x" / "f.txt") == "bye");
}

TEST_CASE("merged reports prefix their parts") {
  ExpansionReport a, b;
  a.metrics = {at_most_metric("m", 0.5, 1.0)};
  a.add_series("s", {1.0});
  a.finalize();
  b.metrics = {at_most_metric("m", 2.0, 1.0)};
  b.finalize();
  const auto m = merge_reports("both", {a, b}, {"left", "right"});
  CHECK(m.name == "both");
  CHECK(m.metric("left.m").pass);
  CHECK_FALSE(m.metric("right.m").pass);
  CHECK_FALSE(m.pass);
}
