#include "wlansim/app/generate.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wlansim/error.hpp"

namespace wlansim::app {

io::ScenarioConfig fully_overlapping_scenario(int n_wlans, const phy::PhyMacParams& params,
                                              const mac::MacConfig& mac) {
  if (n_wlans < 1) throw ConfigError("need at least one WLAN");
  constexpr double kApRadius = 4.0;
  constexpr double kStaRadius = 6.0;
  io::ScenarioConfig config;
  config.params = params;
  config.mac = mac;
  for (int i = 0; i < n_wlans; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / n_wlans;
    const std::string id = std::to_string(i + 1);
    io::NodeConfig ap;
    ap.node_code = "AP" + id;
    ap.type = io::NodeType::kAp;
    ap.wlan_code = "W" + id;
    ap.x = kApRadius * std::cos(angle);
    ap.y = kApRadius * std::sin(angle);
    io::NodeConfig sta = ap;
    sta.node_code = "STA" + id;
    sta.type = io::NodeType::kSta;
    sta.x = kStaRadius * std::cos(angle);
    sta.y = kStaRadius * std::sin(angle);
    config.nodes.push_back(ap);
    config.nodes.push_back(sta);
  }
  config.validate();
  return config;
}

}  // namespace wlansim::app
