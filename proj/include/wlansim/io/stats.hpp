#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wlansim/sim/time.hpp"

namespace wlansim::io {

inline constexpr std::string_view kStatsHeader = "wlan_code,throughput_mbps,mean_delay_ms,collision_prob,occupancy";

struct StationTotals {
  std::string node_code;
  std::uint64_t delivered_mpdus = 0;
  std::int64_t acked_bits = 0;
};

/// Raw per-WLAN accumulators filled during a run.
struct WlanTotals {
  std::string wlan_code;
  std::uint64_t attempts = 0;      // RTS transmissions
  std::uint64_t failed = 0;        // attempts ending in CTS timeout
  std::uint64_t ack_timeouts = 0;  // exchanges lost after the handshake
  std::uint64_t delivered_mpdus = 0;
  std::int64_t acked_bits = 0;
  double delay_sum_s = 0.0;
  Duration airtime{0};  // RTS start to last frame end, summed over exchanges
  std::vector<StationTotals> stations;
};

struct WlanStats {
  std::string wlan_code;
  double throughput_bps = 0.0;
  double mean_delay_s = 0.0;
  double collision_prob = 0.0;
  bool no_attempts = false;  // collision_prob is 0 by convention
  double occupancy = 0.0;
  WlanTotals totals;
};

struct StatsReport {
  std::vector<WlanStats> wlans;
  double sim_time_s = 0.0;
  std::uint64_t events_dispatched = 0;
  double wall_clock_s = 0.0;

  /// True when nothing was attempted anywhere.
  bool idle() const;
  const WlanStats* find(std::string_view wlan_code) const;
};

/// Throws ContractViolation if sim_time_s <= 0.
StatsReport finalize_stats(const std::vector<WlanTotals>& totals, double sim_time_s);

/// Header plus one row per WLAN with fixed six-decimal formatting.
std::string format_stats_csv(const StatsReport& report);

}  // namespace wlansim::io
