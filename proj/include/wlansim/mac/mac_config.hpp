#pragma once

#include <optional>

#include "wlansim/phy/params.hpp"
#include "wlansim/sim/random.hpp"

namespace wlansim::mac {

/// MAC knobs that are not part of the PHY/MAC constant set.
struct MacConfig {
  int n_agg = 1;                               // A-MPDU size limit
  std::optional<int> fixed_mcs;                // unset: negotiated from the link budget
  std::optional<double> capture_threshold_db;  // unset: sensitivity(mcs) - noise
  int cw_stages = 0;                           // 0 keeps CW fixed; m > 0 enables binary exponential backoff
  int buffer_capacity = 1000;

  void validate() const;
};

/// Uniform backoff in [0, cw] slots.
int draw_backoff(sim::RandomStream& rng, int cw);

/// Contention window after a failed attempt: doubles (cw + 1) up to `stages`
/// doublings of the base window.
int next_contention_window(int cw_current, int base_cw, int stages);

/// Minimum SINR for a reception at `mcs` to survive.
double capture_threshold_db(int mcs, const phy::PhyMacParams& p, const MacConfig& config);

}  // namespace wlansim::mac
