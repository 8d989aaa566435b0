#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "wlansim/io/scenario.hpp"
#include "wlansim/mac/network.hpp"
#include "wlansim/sim/random.hpp"

namespace wlansim::test {

inline std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(WLANSIM_SCENARIO_DIR) / name;
}

inline io::NodeConfig ap(const std::string& code, const std::string& wlan, double x, double y, double cca = -82.0) {
  io::NodeConfig n;
  n.node_code = code;
  n.type = io::NodeType::kAp;
  n.wlan_code = wlan;
  n.x = x;
  n.y = y;
  n.cca_dbm = cca;
  return n;
}

inline io::NodeConfig sta(const std::string& code, const std::string& wlan, double x, double y, double cca = -82.0) {
  io::NodeConfig n = ap(code, wlan, x, y, cca);
  n.type = io::NodeType::kSta;
  return n;
}

inline mac::RunOptions options(std::uint64_t seed, bool check_invariants = false) {
  mac::RunOptions o;
  o.seed = seed;
  o.check_invariants = check_invariants;
  return o;
}

/// Fresh scratch directory under the system temp dir, emptied first.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("wlansim-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Small random deployment mixing channels, bonding policies and traffic models.
inline io::ScenarioConfig random_scenario(sim::RandomStream& rng) {
  io::ScenarioConfig cfg;
  const int wlans = static_cast<int>(rng.uniform_int(1, 5));
  for (int w = 0; w < wlans; ++w) {
    const std::string code = "W" + std::to_string(w);
    const double x = rng.uniform01() * 30.0;
    const double y = rng.uniform01() * 30.0;
    const double cca = -82.0 + rng.uniform01() * 20.0;
    const int width_log = static_cast<int>(rng.uniform_int(0, 2));
    const int width = 1 << width_log;
    const int first = static_cast<int>(rng.uniform_int(0, 8 / width - 1)) * width;
    const int primary = first + static_cast<int>(rng.uniform_int(0, width - 1));
    const auto policy = static_cast<mac::DcbPolicy>(rng.uniform_int(0, 3));
    auto place = [&](io::NodeConfig n) {
      n.primary_channel = primary;
      n.min_channel = first;
      n.max_channel = first + width - 1;
      n.dcb_policy = policy;
      const auto kind = rng.uniform_int(0, 2);
      if (kind == 1) n.traffic = {traffic::TrafficKind::kPoisson, 200.0 + rng.uniform01() * 3000.0};
      if (kind == 2) n.traffic = {traffic::TrafficKind::kDeterministic, 100.0 + rng.uniform01() * 2000.0};
      return n;
    };
    cfg.nodes.push_back(place(test::ap("AP" + std::to_string(w), code, x, y, cca)));
    const int stas = static_cast<int>(rng.uniform_int(1, 3));
    for (int s = 0; s < stas; ++s) {
      const double angle = rng.uniform01() * 6.283185307179586;
      const double r = 0.5 + rng.uniform01() * 4.0;
      cfg.nodes.push_back(place(test::sta("STA" + std::to_string(w) + "_" + std::to_string(s), code,
                                          x + r * std::cos(angle), y + r * std::sin(angle), cca)));
    }
  }
  cfg.mac.n_agg = static_cast<int>(rng.uniform_int(1, 16));
  cfg.mac.buffer_capacity = static_cast<int>(rng.uniform_int(5, 200));
  if (rng.uniform01() < 0.5) cfg.mac.cw_stages = static_cast<int>(rng.uniform_int(1, 5));
  if (rng.uniform01() < 0.5) cfg.mac.capture_threshold_db = 5.0 + rng.uniform01() * 20.0;
  return cfg;
}

}  // namespace wlansim::test
