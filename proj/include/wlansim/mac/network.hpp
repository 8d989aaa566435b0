#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wlansim/io/scenario.hpp"
#include "wlansim/io/stats.hpp"
#include "wlansim/mac/node.hpp"
#include "wlansim/phy/channel_set.hpp"
#include "wlansim/sim/engine.hpp"
#include "wlansim/sim/random.hpp"
#include "wlansim/traffic/buffer.hpp"

namespace wlansim::mac {

/// Extension point for learning agents. The default does nothing.
class AgentHook {
 public:
  virtual ~AgentHook() = default;
  virtual void on_exchange_end(sim::NodeId /*ap*/, bool /*success*/, SimTime /*now*/) {}
};

struct RunOptions {
  std::uint64_t seed = 1;
  /// Receives one `time_us,kind,node,detail` line per dispatched event (no header).
  std::ostream* trace = nullptr;
  /// Receives `time_us node from->to reason` lines, keyed by node code.
  std::function<void(const std::string& node_code, std::string_view line)> node_log;
  AgentHook* agent = nullptr;
  /// Test hook replacing the uniform backoff draw.
  std::function<int(sim::NodeId node, int cw)> backoff_draw;
  /// Check the per-node state invariants after every event.
  bool check_invariants = false;
};

struct NodeReport {
  std::string node_code;
  std::string wlan_code;
  bool is_ap = false;
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t buffered = 0;
  NodeCounters counters;
};

/// One deployment driven by one engine. Construct, run once, inspect.
class Network {
 public:
  /// Throws ConfigError for infeasible links or aggregation settings.
  Network(io::ScenarioConfig config, RunOptions options = {});

  /// Simulates [0, sim_time] and returns the statistics. Callable once.
  io::StatsReport run(SimTime sim_time);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t wlan_count() const { return wlans_.size(); }
  const std::string& node_code(sim::NodeId n) const { return nodes_[n].code; }
  std::optional<sim::NodeId> find_node(std::string_view code) const;
  const NodeState& state(sim::NodeId n) const { return states_[n]; }
  const sim::Engine& engine() const { return engine_; }
  const std::vector<io::WlanTotals>& wlan_totals() const { return totals_; }
  std::vector<NodeReport> node_reports() const;

  /// Data MCS of the AP -> `sta` link.
  int link_mcs(sim::NodeId sta) const { return nodes_[sta].link_mcs; }
  double rx_power_dbm(sim::NodeId from, sim::NodeId to) const { return rx_dbm_[from * nodes_.size() + to]; }

  /// Contention as realized during the run: true iff AP `b` ever found its
  /// primary busy while an RTS of WLAN `a` was the only frame in the air.
  bool observed_busy(std::size_t wlan_a, std::size_t wlan_b) const;
  /// True iff the situation above was observed at least once either way.
  bool observed(std::size_t wlan_a, std::size_t wlan_b) const;

 private:
  struct NodeInfo {
    std::string code;
    bool is_ap = false;
    std::size_t wlan = 0;
    sim::NodeId ap = sim::kNoNode;
    std::vector<sim::NodeId> stas;
    phy::ChannelSet allocation;
    DcbPolicy policy = DcbPolicy::kOnlyPrimary;
    double tx_power_dbm = 0.0;
    double cca_dbm = 0.0;
    traffic::TrafficModel traffic;
    int link_mcs = 0;  // STA: MCS of its downlink
  };

  void dispatch(const sim::Event& ev);
  void write_trace(const sim::Event& ev);

  void on_frame_start(std::uint64_t frame_id);
  void on_frame_end(std::uint64_t frame_id);
  void on_backoff_expiry(sim::NodeId n);
  void on_timeout(sim::NodeId n);
  void on_nav_expiry(sim::NodeId n);
  void on_traffic_arrival(sim::NodeId n);

  void receiver_frame_start(sim::NodeId n, const Notification& f);
  void finish_reception(sim::NodeId n, const Notification& f);
  void own_frame_end(const Notification& f);

  bool decodable(sim::NodeId n, const Notification& f) const;
  double sinr_at(sim::NodeId n, const Notification& f) const;
  double capture_threshold(int mcs) const;

  void set_mode(sim::NodeId n, Mode to, std::string_view reason);
  void enter_sensing(sim::NodeId n, std::string_view reason);
  void ensure_backoff(sim::NodeId n);
  void draw_new_backoff(sim::NodeId n);
  void evaluate_channel(sim::NodeId n);
  void suspend_backoff(sim::NodeId n);
  void nav_update(sim::NodeId n, SimTime until);
  void arm_timeout(sim::NodeId n, TimeoutKind kind, Duration after);
  void cancel_timeout(sim::NodeId n);
  void send(sim::NodeId tx, sim::NodeId rx, FrameKind kind, SimTime at);
  void finish_exchange(sim::NodeId ap, bool success);
  bool has_traffic(sim::NodeId n) const;

  void refresh_cca();
  void rebuild_channel(int channel);
  void record_contention(const Notification& f);
  void check_invariants() const;

  io::ScenarioConfig config_;
  RunOptions options_;
  const phy::PhyMacParams& p_;
  sim::Engine engine_;

  std::vector<NodeInfo> nodes_;
  std::vector<NodeState> states_;
  std::vector<sim::RandomStream> rngs_;
  std::vector<std::optional<traffic::Buffer>> buffers_;

  std::vector<double> rx_dbm_;  // [tx * N + rx]
  std::vector<double> rx_mw_;   // [tx * N + rx], 0 on the diagonal
  std::vector<double> cca_mw_;
  std::vector<SimTime> idle_since_;  // when each node's primary last turned idle
  std::vector<std::uint8_t> primary_was_busy_;
  std::array<std::vector<double>, phy::kMaxChannels> chan_power_mw_;
  std::array<std::vector<std::uint8_t>, phy::kMaxChannels> busy_;
  std::uint8_t used_channels_ = 0;

  std::unordered_map<std::uint64_t, Notification> frames_;
  std::vector<std::uint64_t> active_;
  std::uint64_t next_frame_id_ = 1;

  std::vector<std::string> wlans_;
  std::vector<sim::NodeId> wlan_ap_;
  std::vector<io::WlanTotals> totals_;
  std::vector<SimTime> last_frame_end_;  // per WLAN
  std::vector<std::uint8_t> seen_busy_;  // [a * W + b]
  std::vector<std::uint8_t> seen_free_;

  bool ran_ = false;
};

}  // namespace wlansim::mac
