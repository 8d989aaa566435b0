#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wlansim/error.hpp"
#include "wlansim/mac/dcb.hpp"
#include "wlansim/mac/mac_config.hpp"
#include "wlansim/phy/params.hpp"
#include "wlansim/traffic/traffic.hpp"

namespace wlansim::io {

inline constexpr std::string_view kScenarioHeader =
    "node_code,node_type,wlan_code,x,y,z,primary_channel,min_channel,max_channel,tx_power_dbm,cca_dbm,"
    "traffic_model,traffic_load,dcb_policy";

enum class NodeType { kAp, kSta };

struct NodeConfig {
  std::string node_code;
  NodeType type = NodeType::kAp;
  std::string wlan_code;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  int primary_channel = 0;
  int min_channel = 0;
  int max_channel = 0;
  double tx_power_dbm = 20.0;
  double cca_dbm = -82.0;
  traffic::TrafficModel traffic;
  mac::DcbPolicy dcb_policy = mac::DcbPolicy::kOnlyPrimary;
  int source_line = 0;  // 1-based line in the scenario file, 0 if built in code

  friend bool operator==(const NodeConfig& a, const NodeConfig& b);
};

/// Explicit obstacle counts for one (unordered) node pair; unlisted pairs have none.
struct LinkObstacles {
  std::string node_a;
  std::string node_b;
  int walls = 0;
  int floors = 0;
};

struct ScenarioConfig {
  std::vector<NodeConfig> nodes;
  phy::PhyMacParams params;
  mac::MacConfig mac;
  std::vector<LinkObstacles> obstacles;

  /// WLAN codes in order of first appearance.
  std::vector<std::string> wlan_codes() const;

  /// Structural checks (one AP per WLAN, references, channels, geometry).
  /// Throws ScenarioError pointing at the offending node's line.
  void validate() const;
};

class ScenarioError : public ConfigError {
 public:
  enum class Kind { kIo, kMissingColumn, kBadValue, kDanglingReference, kDuplicateNode, kInvalid };

  ScenarioError(Kind kind, std::string source, int line, int column, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::string source_;
  int line_;
  int column_;
};

std::string_view to_string(ScenarioError::Kind kind);

/// Parses the node table. Extra columns are ignored with a warning appended
/// to `warnings` (if given). PHY/MAC parameters keep their defaults.
ScenarioConfig parse_scenario(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);
ScenarioConfig parse_scenario_text(std::string_view text, const std::string& source_name,
                                   std::vector<std::string>* warnings = nullptr);

/// Node table in the canonical column order; round-trips through parse_scenario_text.
std::string write_scenario(const ScenarioConfig& config);

/// Optional `node_a,node_b,walls,floors` table.
std::vector<LinkObstacles> parse_obstacles(const std::filesystem::path& path);

}  // namespace wlansim::io
