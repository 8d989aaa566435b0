#pragma once

#include "wlansim/phy/params.hpp"

namespace wlansim::oracles {

struct BianchiFixedPoint {
  double tau = 0.0;  // attempt probability per slot
  double p = 0.0;    // conditional collision probability
  int iterations = 0;
};

/// Saturated-DCF fixed point for n contenders with backoff uniform on [0, cw].
/// stages = 0 is the fixed-window closed form; stages > 0 iterates the
/// binary-exponential model until the residual drops below 1e-12.
/// Throws ContractViolation on bad input and Error on non-convergence.
BianchiFixedPoint bianchi_fixed_point(int n, int cw, int stages = 0);

struct BianchiResult {
  double tau = 0.0;
  double p = 0.0;
  double per_wlan_throughput_bps = 0.0;
  double aggregate_throughput_bps = 0.0;
  double collision_prob = 0.0;
};

/// Slotted renewal throughput with RTS/CTS access.
BianchiResult bianchi_throughput(int n, const phy::PhyMacParams& p, int mcs, int n_agg, int stages = 0);

/// A single saturated WLAN with no competitors:
/// n_agg * L_D / (E[BO] * T_e + T_DIFS + exchange airtime).
double isolated_throughput_bps(const phy::PhyMacParams& p, int mcs, int n_agg, int width_channels = 1);

}  // namespace wlansim::oracles
