#include "wlansim/phy/params.hpp"

#include <string>

#include "wlansim/error.hpp"

namespace wlansim::phy {

namespace {

void require_positive(Duration d, const char* name) {
  if (d.count() <= 0) throw ConfigError(std::string("parameter ") + name + " must be a positive duration");
}

void require_positive(int v, const char* name) {
  if (v <= 0) throw ConfigError(std::string("parameter ") + name + " must be a positive integer");
}

}  // namespace

void PhyMacParams::validate() const {
  if (!(center_frequency_hz > 0.0)) throw ConfigError("parameter center_frequency_hz must be positive");
  if (!(basic_channel_width_hz > 0.0)) throw ConfigError("parameter basic_channel_width_hz must be positive");
  require_positive(legacy_symbol, "legacy_symbol_us");
  require_positive(he_symbol, "he_symbol_us");
  require_positive(subcarriers, "subcarriers");
  require_positive(spatial_streams, "spatial_streams");
  require_positive(empty_slot, "empty_slot_us");
  require_positive(sifs, "sifs_us");
  require_positive(difs, "difs_us");
  require_positive(pifs, "pifs_us");
  require_positive(legacy_preamble, "legacy_preamble_us");
  require_positive(he_su_preamble, "he_su_preamble_us");
  require_positive(ack, "ack_us");
  require_positive(block_ack, "block_ack_us");
  require_positive(max_ppdu, "max_ppdu_us");
  require_positive(legacy_symbol_bits, "legacy_symbol_bits");
  require_positive(data_bits, "data_bits");
  require_positive(rts_bits, "rts_bits");
  require_positive(cts_bits, "cts_bits");
  require_positive(service_field_bits, "service_field_bits");
  require_positive(mac_header_bits, "mac_header_bits");
  if (contention_window < 0) throw ConfigError("parameter contention_window must be >= 0");
  for (int m = 1; m < kMcsCount; ++m) {
    if (sensitivity_dbm[m] < sensitivity_dbm[m - 1]) {
      throw ConfigError("sensitivity table must be non-decreasing in MCS index (mcs " + std::to_string(m) + ")");
    }
  }
}

}  // namespace wlansim::phy
