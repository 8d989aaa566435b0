#include "wlansim/oracles/contention.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "wlansim/error.hpp"
#include "wlansim/phy/frames.hpp"
#include "wlansim/phy/mcs.hpp"
#include "wlansim/phy/propagation.hpp"

namespace wlansim::oracles {

ContentionGraph::ContentionGraph(std::vector<std::string> wlans) : wlans_(std::move(wlans)), adj_(wlans_.size(), 0) {
  if (wlans_.size() > 32) throw ConfigError("contention graphs are limited to 32 WLANs");
}

void ContentionGraph::add_edge(std::size_t a, std::size_t b) {
  if (a >= size() || b >= size()) throw ContractViolation("edge references an unknown WLAN");
  if (a == b) throw ContractViolation("contention graph cannot have self-loops");
  adj_[a] |= 1u << b;
  adj_[b] |= 1u << a;
}

bool ContentionGraph::adjacent(std::size_t a, std::size_t b) const { return ((adj_[a] >> b) & 1u) != 0; }

std::size_t ContentionGraph::edge_count() const {
  std::size_t twice = 0;
  for (std::uint32_t row : adj_) twice += static_cast<std::size_t>(std::popcount(row));
  return twice / 2;
}

namespace {

double distance(const io::NodeConfig& a, const io::NodeConfig& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

phy::LinkBudget link_between(const io::ScenarioConfig& config, const io::NodeConfig& a, const io::NodeConfig& b) {
  phy::LinkBudget link{distance(a, b), 0, 0};
  for (const io::LinkObstacles& o : config.obstacles) {
    if ((o.node_a == a.node_code && o.node_b == b.node_code) || (o.node_a == b.node_code && o.node_b == a.node_code)) {
      link.walls = o.walls;
      link.floors = o.floors;
    }
  }
  return link;
}

}  // namespace

std::vector<WlanSummary> summarize_wlans(const io::ScenarioConfig& config) {
  config.validate();
  const phy::PhyMacParams& p = config.params;
  std::vector<WlanSummary> out;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < config.nodes.size(); ++i) {
    const io::NodeConfig& n = config.nodes[i];
    if (n.type != io::NodeType::kAp) continue;
    WlanSummary w;
    w.wlan_code = n.wlan_code;
    w.ap = i;
    const auto alloc = phy::ChannelSet::range(n.min_channel, n.max_channel, n.primary_channel);
    w.channels = n.dcb_policy == mac::DcbPolicy::kOnlyPrimary ? phy::ChannelSet::single(n.primary_channel) : alloc;
    w.cca_dbm = n.cca_dbm;
    w.mcs = -1;
    index[n.wlan_code] = out.size();
    out.push_back(w);
  }
  // MCS of the first STA's link (all STAs share the fixed MCS when one is set).
  for (const io::NodeConfig& n : config.nodes) {
    if (n.type != io::NodeType::kSta) continue;
    WlanSummary& w = out[index.at(n.wlan_code)];
    if (w.mcs >= 0) continue;
    const io::NodeConfig& ap = config.nodes[w.ap];
    const double rx =
        phy::received_power_dbm(ap.tx_power_dbm, phy::path_loss_db(link_between(config, ap, n), p), p);
    (void)phy::select_mcs(rx, 1, p);
    const auto alloc = phy::ChannelSet::range(ap.min_channel, ap.max_channel, ap.primary_channel);
    w.mcs = config.mac.fixed_mcs ? *config.mac.fixed_mcs : phy::select_mcs(rx, alloc.width(), p);
  }
  for (WlanSummary& w : out) {
    const int fits = phy::max_aggregation(p, w.mcs, w.channels.width());
    if (fits == 0) throw AggregationOverflow("WLAN " + w.wlan_code + ": one MPDU exceeds the PPDU limit", 0);
    w.n_agg = std::min(config.mac.n_agg, fits);
  }
  return out;
}

std::vector<double> ap_power_matrix(const io::ScenarioConfig& config, const std::vector<WlanSummary>& wlans) {
  const std::size_t n = wlans.size();
  std::vector<double> out(n * n, phy::kNoPowerDbm);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const io::NodeConfig& tx = config.nodes[wlans[a].ap];
      const io::NodeConfig& rx = config.nodes[wlans[b].ap];
      out[a * n + b] = phy::received_power_dbm(tx.tx_power_dbm,
                                               phy::path_loss_db(link_between(config, tx, rx), config.params),
                                               config.params);
    }
  }
  return out;
}

ContentionGraph contention_graph(const io::ScenarioConfig& config) {
  const auto wlans = summarize_wlans(config);
  const auto power = ap_power_matrix(config, wlans);
  std::vector<std::string> names;
  for (const WlanSummary& w : wlans) names.push_back(w.wlan_code);
  ContentionGraph g(std::move(names));
  const std::size_t n = wlans.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const bool b_hears_a =
          wlans[a].channels.contains(wlans[b].channels.primary) && power[a * n + b] >= wlans[b].cca_dbm;
      const bool a_hears_b =
          wlans[b].channels.contains(wlans[a].channels.primary) && power[b * n + a] >= wlans[a].cca_dbm;
      if (a_hears_b || b_hears_a) g.add_edge(a, b);
    }
  }
  return g;
}

}  // namespace wlansim::oracles
