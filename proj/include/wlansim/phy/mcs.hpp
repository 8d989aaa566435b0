#pragma once

#include "wlansim/phy/params.hpp"

namespace wlansim::phy {

struct Modulation {
  int constellation_points;  // M
  int code_numerator;
  int code_denominator;
};

/// 802.11ax MCS ladder (BPSK 1/2 through 1024-QAM 5/6).
Modulation modulation(int mcs);

/// True for widths 1, 2, 4 and 8 basic channels.
bool valid_width(int width_channels);

/// Sensitivity of `mcs` at the given width: the 20 MHz value plus 3 dB per doubling.
double sensitivity_dbm(int mcs, int width_channels, const PhyMacParams& p);

/// Highest MCS whose sensitivity is at or below rx_power. Throws
/// LinkInfeasible below MCS 0.
int select_mcs(double rx_power_dbm, int width_channels, const PhyMacParams& p);

/// Data bits carried by one OFDM symbol: N_sc * width * N_ss * log2(M) * rate.
double bits_per_symbol(int mcs, int width_channels, const PhyMacParams& p);

}  // namespace wlansim::phy
