#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlansim/io/scenario.hpp"
#include "wlansim/phy/channel_set.hpp"

namespace wlansim::oracles {

/// WLAN-level contention: an edge means a transmission of one WLAN keeps the
/// other from accessing the medium. Irreflexive and symmetric by construction.
class ContentionGraph {
 public:
  explicit ContentionGraph(std::vector<std::string> wlans);

  std::size_t size() const { return wlans_.size(); }
  const std::vector<std::string>& wlans() const { return wlans_; }

  /// Throws ContractViolation for self-loops or unknown indices.
  void add_edge(std::size_t a, std::size_t b);
  bool adjacent(std::size_t a, std::size_t b) const;
  /// Bit b set iff WLAN b is adjacent to `a`.
  std::uint32_t neighbours(std::size_t a) const { return adj_[a]; }
  std::size_t edge_count() const;

 private:
  std::vector<std::string> wlans_;
  std::vector<std::uint32_t> adj_;
};

/// Per-WLAN link facts the oracles need.
struct WlanSummary {
  std::string wlan_code;
  std::size_t ap = 0;           // index into ScenarioConfig::nodes
  phy::ChannelSet channels;     // set used for transmissions (primary only for OP)
  int mcs = 0;
  int n_agg = 1;                // configured limit clamped to what fits
  double cca_dbm = 0.0;
};

/// Throws LinkInfeasible like the simulator would.
std::vector<WlanSummary> summarize_wlans(const io::ScenarioConfig& config);

/// Received power between APs, [from * W + to] in dBm (-inf on the diagonal).
std::vector<double> ap_power_matrix(const io::ScenarioConfig& config, const std::vector<WlanSummary>& wlans);

/// Edge iff either AP detects the other's transmission (alone, on a channel
/// covering its primary) at or above its CCA threshold.
ContentionGraph contention_graph(const io::ScenarioConfig& config);

}  // namespace wlansim::oracles
