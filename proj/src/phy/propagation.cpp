#include "wlansim/phy/propagation.hpp"

#include <algorithm>
#include <string>

#include "wlansim/error.hpp"

namespace wlansim::phy {

double path_loss_db(const LinkBudget& link, const PhyMacParams& p) {
  if (!(link.distance_m > 0.0)) {
    throw ConfigError("path loss: distance must be positive, got " + std::to_string(link.distance_m));
  }
  if (link.walls < 0 || link.floors < 0) throw ConfigError("path loss: wall/floor counts must be >= 0");

  constexpr double kBreakpointM = 5.0;
  const double d = link.distance_m;
  double loss = 40.05 + 20.0 * std::log10(p.center_frequency_hz / 2.4e9) + 20.0 * std::log10(std::min(d, kBreakpointM));
  if (d > kBreakpointM) loss += 35.0 * std::log10(d / kBreakpointM);
  if (link.floors > 0) {
    const double f = link.floors;
    loss += 18.3 * std::pow(f, (f + 2.0) / (f + 1.0) - 0.46);
  }
  loss += 5.0 * link.walls;
  return loss;
}

double received_power_dbm(double tx_power_dbm, double path_loss, const PhyMacParams& p) {
  return tx_power_dbm + p.tx_gain_db + p.rx_gain_db - path_loss;
}

ChannelPowers aggregate_interference(std::span<const ActiveSignal> active, const ChannelSet& target) {
  ChannelPowers out;
  out.fill(kNoPowerDbm);
  for (int c = 0; c < kMaxChannels; ++c) {
    if (!target.contains(c)) continue;
    double total_mw = 0.0;
    for (const ActiveSignal& s : active) {
      if (s.channels.contains(c)) total_mw += dbm_to_mw(s.rx_power_dbm);
    }
    out[c] = mw_to_dbm(total_mw);
  }
  return out;
}

double sinr_db(double signal_dbm, double interference_dbm, const PhyMacParams& p) {
  if (interference_dbm == kNoPowerDbm) return signal_dbm - p.noise_floor_dbm;
  const double denominator_mw = dbm_to_mw(interference_dbm) + dbm_to_mw(p.noise_floor_dbm);
  return signal_dbm - 10.0 * std::log10(denominator_mw);
}

std::uint8_t cca_busy(std::span<const double> per_channel_dbm, double threshold_dbm) {
  std::uint8_t busy = 0;
  const std::size_t n = std::min<std::size_t>(per_channel_dbm.size(), kMaxChannels);
  for (std::size_t c = 0; c < n; ++c) {
    if (per_channel_dbm[c] >= threshold_dbm) busy |= static_cast<std::uint8_t>(1u << c);
  }
  return busy;
}

}  // namespace wlansim::phy
