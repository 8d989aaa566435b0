#pragma once

#include <array>

#include "wlansim/sim/time.hpp"

namespace wlansim::phy {

inline constexpr int kMcsCount = 12;

/// PHY/MAC constant set. Defaults are the reference 802.11ax parameters
/// used throughout the validation scenarios.
struct PhyMacParams {
  double center_frequency_hz = 5e9;
  double basic_channel_width_hz = 20e6;
  double tx_gain_db = 0.0;
  double rx_gain_db = 0.0;
  double noise_floor_dbm = -95.0;

  Duration legacy_symbol = micros(4);
  Duration he_symbol = micros(16);  // GI-32
  int subcarriers = 234;            // per 20 MHz
  int spatial_streams = 1;

  Duration empty_slot = micros(9);
  Duration sifs = micros(16);
  Duration difs = micros(34);
  Duration pifs = micros(25);
  Duration legacy_preamble = micros(20);
  Duration he_su_preamble = micros(100);
  Duration ack = micros(28);
  Duration block_ack = micros(32);
  Duration max_ppdu = micros(5484);

  int legacy_symbol_bits = 24;
  int data_bits = 11728;
  int rts_bits = 160;
  int cts_bits = 112;
  int service_field_bits = 16;
  int mac_header_bits = 320;

  int contention_window = 15;

  /// Minimum 20 MHz receiver sensitivity per MCS index, dBm.
  std::array<double, kMcsCount> sensitivity_dbm{-82, -79, -77, -74, -70, -66, -65, -64, -59, -57, -54, -52};

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

}  // namespace wlansim::phy
