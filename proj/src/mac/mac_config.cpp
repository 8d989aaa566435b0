#include "wlansim/mac/mac_config.hpp"

#include <algorithm>
#include <string>

#include "wlansim/error.hpp"
#include "wlansim/phy/mcs.hpp"

namespace wlansim::mac {

void MacConfig::validate() const {
  if (n_agg < 1) throw ConfigError("n_agg must be >= 1");
  if (fixed_mcs && (*fixed_mcs < 0 || *fixed_mcs >= phy::kMcsCount)) {
    throw ConfigError("mcs must be in 0.." + std::to_string(phy::kMcsCount - 1));
  }
  if (cw_stages < 0 || cw_stages > 10) throw ConfigError("cw_stages must be in 0..10");
  if (buffer_capacity < 1) throw ConfigError("buffer_capacity must be >= 1");
}

int draw_backoff(sim::RandomStream& rng, int cw) {
  if (cw < 0) throw ContractViolation("contention window must be >= 0");
  return static_cast<int>(rng.uniform_int(0, cw));
}

int next_contention_window(int cw_current, int base_cw, int stages) {
  if (stages <= 0) return base_cw;
  const int ceiling = (base_cw + 1) * (1 << stages) - 1;
  return std::min(2 * (cw_current + 1) - 1, ceiling);
}

double capture_threshold_db(int mcs, const phy::PhyMacParams& p, const MacConfig& config) {
  if (config.capture_threshold_db) return *config.capture_threshold_db;
  return phy::sensitivity_dbm(mcs, 1, p) - p.noise_floor_dbm;
}

}  // namespace wlansim::mac
