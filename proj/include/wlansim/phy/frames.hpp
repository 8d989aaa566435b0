#pragma once

#include "wlansim/phy/params.hpp"
#include "wlansim/sim/time.hpp"

namespace wlansim::phy {

struct FrameDurations {
  Duration rts{0};
  Duration cts{0};
  Duration data{0};
};

/// Control frames at the legacy rate, the A-MPDU at `mcs` over `width_channels`.
/// Throws AggregationOverflow (carrying the largest feasible count) when the
/// data PPDU would exceed max_ppdu.
FrameDurations frame_durations(const PhyMacParams& p, int n_agg, int mcs, int width_channels);

/// Data PPDU duration without the max-PPDU check.
Duration data_duration(const PhyMacParams& p, int n_agg, int mcs, int width_channels);

/// Largest n_agg whose data PPDU fits in max_ppdu; 0 if even one MPDU does not.
int max_aggregation(const PhyMacParams& p, int mcs, int width_channels);

/// RTS + CTS + DATA + BACK with the three SIFS gaps between them.
Duration exchange_airtime(const PhyMacParams& p, const FrameDurations& d);

/// Reservation carried by an RTS: everything after the RTS itself.
Duration rts_nav(const PhyMacParams& p, const FrameDurations& d);

/// Reservation carried by a CTS: everything after the CTS itself.
Duration cts_nav(const PhyMacParams& p, const FrameDurations& d);

}  // namespace wlansim::phy
