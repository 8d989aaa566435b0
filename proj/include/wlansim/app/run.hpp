#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wlansim/io/scenario.hpp"
#include "wlansim/io/stats.hpp"
#include "wlansim/mac/network.hpp"

namespace wlansim::app {

enum class RunMode { kSimulate, kOracleBianchi, kOracleCtmn, kCompare };
std::string_view to_string(RunMode mode);
std::optional<RunMode> parse_run_mode(std::string_view text);

struct RunSpec {
  std::filesystem::path scenario;
  std::optional<std::filesystem::path> params;  // `parameter,value` overrides
  std::optional<std::filesystem::path> links;   // `node_a,node_b,walls,floors`
  double sim_time_s = 10.0;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";
  bool logs = false;
  bool trace = false;
  RunMode mode = RunMode::kSimulate;
  double tolerance = 0.10;  // compare mode: allowed relative error per WLAN

  /// Throws ConfigError.
  void validate() const;
};

/// Scenario plus the optional parameter and obstacle files.
io::ScenarioConfig load_scenario(const RunSpec& spec, std::vector<std::string>* warnings = nullptr);

struct SimulationResult {
  io::StatsReport report;
  std::vector<mac::NodeReport> nodes;
};

/// Simulates and writes stats (plus trace and logs when enabled) to spec.out_dir.
/// The directory is checked for writability before the run starts.
SimulationResult simulate(const io::ScenarioConfig& config, const RunSpec& spec);

/// Oracle predictions in the stats schema. Bianchi treats every WLAN as one
/// of n fully-overlapping contenders using the first WLAN's link.
io::StatsReport bianchi_report(const io::ScenarioConfig& config);
io::StatsReport ctmn_report(const io::ScenarioConfig& config);

struct CompareRow {
  std::string wlan_code;
  double simulated_mbps = 0.0;
  double oracle_mbps = 0.0;
  double relative_error = 0.0;
};

std::vector<CompareRow> compare_reports(const io::StatsReport& simulated, const io::StatsReport& oracle);
std::string format_compare_csv(const std::vector<CompareRow>& rows);

/// Runs one spec end to end. Returns the process exit code: 0 success,
/// 1 compare tolerance exceeded, 2 configuration error, 3 contract violation.
/// Failures print exactly one `error,<category>,<message>` line to `err`.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Maps the current exception to an exit code and prints the error line.
int report_exception(std::ostream& err);

}  // namespace wlansim::app
