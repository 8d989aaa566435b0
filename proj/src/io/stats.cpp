#include "wlansim/io/stats.hpp"

#include <sstream>

#include "wlansim/error.hpp"
#include "wlansim/io/csv.hpp"

namespace wlansim::io {

bool StatsReport::idle() const {
  for (const WlanStats& w : wlans) {
    if (!w.no_attempts) return false;
  }
  return true;
}

const WlanStats* StatsReport::find(std::string_view wlan_code) const {
  for (const WlanStats& w : wlans) {
    if (w.wlan_code == wlan_code) return &w;
  }
  return nullptr;
}

StatsReport finalize_stats(const std::vector<WlanTotals>& totals, double sim_time_s) {
  if (!(sim_time_s > 0.0)) throw ContractViolation("statistics need a positive simulation time");
  StatsReport report;
  report.sim_time_s = sim_time_s;
  for (const WlanTotals& t : totals) {
    WlanStats s;
    s.wlan_code = t.wlan_code;
    s.totals = t;
    s.throughput_bps = static_cast<double>(t.acked_bits) / sim_time_s;
    s.mean_delay_s = t.delivered_mpdus > 0 ? t.delay_sum_s / static_cast<double>(t.delivered_mpdus) : 0.0;
    s.no_attempts = t.attempts == 0;
    s.collision_prob = s.no_attempts ? 0.0 : static_cast<double>(t.failed) / static_cast<double>(t.attempts);
    s.occupancy = to_seconds(t.airtime) / sim_time_s;
    report.wlans.push_back(std::move(s));
  }
  return report;
}

std::string format_stats_csv(const StatsReport& report) {
  std::ostringstream out;
  out << kStatsHeader << '\n';
  for (const WlanStats& w : report.wlans) {
    out << w.wlan_code << ',' << format_fixed(w.throughput_bps * 1e-6, 6) << ','
        << format_fixed(w.mean_delay_s * 1e3, 6) << ',' << format_fixed(w.collision_prob, 6) << ','
        << format_fixed(w.occupancy, 6) << '\n';
  }
  return out.str();
}

}  // namespace wlansim::io
