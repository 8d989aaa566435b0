#pragma once

#include "wlansim/io/scenario.hpp"

namespace wlansim::app {

/// Seedless fully-overlapping deployment: n APs on a 4 m circle, each STA
/// 2 m further out on its AP's radius. Every pair of nodes is within 12 m, so
/// all nodes sense each other at the default CCA and any two overlapping
/// frames destroy each other at the default capture threshold.
/// WLANs are named W1..Wn, nodes AP1/STA1..APn/STAn.
io::ScenarioConfig fully_overlapping_scenario(int n_wlans, const phy::PhyMacParams& params = {},
                                              const mac::MacConfig& mac = {});

}  // namespace wlansim::app
