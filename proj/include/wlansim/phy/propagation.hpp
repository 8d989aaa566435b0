#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "wlansim/phy/channel_set.hpp"
#include "wlansim/phy/params.hpp"

namespace wlansim::phy {

inline constexpr double kNoPowerDbm = -std::numeric_limits<double>::infinity();

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return mw > 0.0 ? 10.0 * std::log10(mw) : kNoPowerDbm; }

struct LinkBudget {
  double distance_m = 1.0;
  int walls = 0;
  int floors = 0;
};

/// 802.11ax residential path loss in dB. Throws ConfigError for distance <= 0
/// or negative obstacle counts.
double path_loss_db(const LinkBudget& link, const PhyMacParams& p);

double received_power_dbm(double tx_power_dbm, double path_loss, const PhyMacParams& p);

/// One ongoing transmission as seen by a receiver.
struct ActiveSignal {
  double rx_power_dbm = kNoPowerDbm;
  ChannelSet channels;
};

using ChannelPowers = std::array<double, kMaxChannels>;

/// Per basic channel of `target`, the linear sum of every signal covering it.
/// Channels outside `target`, and empty channels, report kNoPowerDbm.
ChannelPowers aggregate_interference(std::span<const ActiveSignal> active, const ChannelSet& target);

/// SINR in dB; interference may be kNoPowerDbm.
double sinr_db(double signal_dbm, double interference_dbm, const PhyMacParams& p);

/// Bit i set iff channel i's power is at or above the threshold.
std::uint8_t cca_busy(std::span<const double> per_channel_dbm, double threshold_dbm);

}  // namespace wlansim::phy
