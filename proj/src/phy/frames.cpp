#include "wlansim/phy/frames.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "wlansim/error.hpp"
#include "wlansim/phy/mcs.hpp"

namespace wlansim::phy {

namespace {

std::int64_t ceil_div(std::int64_t num, std::int64_t den) { return (num + den - 1) / den; }

Duration legacy_frame(const PhyMacParams& p, int payload_bits) {
  return p.legacy_preamble + ceil_div(p.service_field_bits + payload_bits, p.legacy_symbol_bits) * p.legacy_symbol;
}

}  // namespace

Duration data_duration(const PhyMacParams& p, int n_agg, int mcs, int width_channels) {
  if (n_agg < 1) throw ContractViolation("n_agg must be >= 1, got " + std::to_string(n_agg));
  // Every ladder entry yields a whole number of bits per symbol.
  const auto bps = static_cast<std::int64_t>(std::llround(bits_per_symbol(mcs, width_channels, p)));
  const std::int64_t bits =
      std::int64_t{p.service_field_bits} + p.mac_header_bits + std::int64_t{n_agg} * p.data_bits;
  return p.he_su_preamble + ceil_div(bits, bps) * p.he_symbol;
}

int max_aggregation(const PhyMacParams& p, int mcs, int width_channels) {
  if (data_duration(p, 1, mcs, width_channels) > p.max_ppdu) return 0;
  // T_D is monotone in n, so bisect on [1, hi].
  int lo = 1;
  int hi = 2;
  while (data_duration(p, hi, mcs, width_channels) <= p.max_ppdu) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (data_duration(p, mid, mcs, width_channels) <= p.max_ppdu) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

FrameDurations frame_durations(const PhyMacParams& p, int n_agg, int mcs, int width_channels) {
  FrameDurations d;
  d.rts = legacy_frame(p, p.rts_bits);
  d.cts = legacy_frame(p, p.cts_bits);
  d.data = data_duration(p, n_agg, mcs, width_channels);
  if (d.data > p.max_ppdu) {
    const int feasible = max_aggregation(p, mcs, width_channels);
    throw AggregationOverflow("A-MPDU of " + std::to_string(n_agg) + " MPDUs at MCS " + std::to_string(mcs) + " over " +
                                  std::to_string(20 * width_channels) + " MHz lasts " +
                                  std::to_string(d.data.count() / 1000) + " us, above the " +
                                  std::to_string(p.max_ppdu.count() / 1000) + " us PPDU limit (max n_agg " +
                                  std::to_string(feasible) + ")",
                              feasible);
  }
  return d;
}

Duration exchange_airtime(const PhyMacParams& p, const FrameDurations& d) {
  return d.rts + 3 * p.sifs + d.cts + d.data + p.block_ack;
}

Duration rts_nav(const PhyMacParams& p, const FrameDurations& d) { return 3 * p.sifs + d.cts + d.data + p.block_ack; }

Duration cts_nav(const PhyMacParams& p, const FrameDurations& d) { return 2 * p.sifs + d.data + p.block_ack; }

}  // namespace wlansim::phy
