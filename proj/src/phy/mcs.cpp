#include "wlansim/phy/mcs.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "wlansim/error.hpp"

namespace wlansim::phy {

namespace {

constexpr std::array<Modulation, kMcsCount> kLadder{{
    {2, 1, 2},
    {4, 1, 2},
    {4, 3, 4},
    {16, 1, 2},
    {16, 3, 4},
    {64, 2, 3},
    {64, 3, 4},
    {64, 5, 6},
    {256, 3, 4},
    {256, 5, 6},
    {1024, 3, 4},
    {1024, 5, 6},
}};

void check_mcs(int mcs) {
  if (mcs < 0 || mcs >= kMcsCount) throw ContractViolation("MCS index out of range: " + std::to_string(mcs));
}

void check_width(int width) {
  if (!valid_width(width)) throw ContractViolation("channel width must be 1, 2, 4 or 8, got " + std::to_string(width));
}

}  // namespace

Modulation modulation(int mcs) {
  check_mcs(mcs);
  return kLadder[mcs];
}

bool valid_width(int width_channels) {
  return width_channels >= 1 && width_channels <= 8 && std::has_single_bit(static_cast<unsigned>(width_channels));
}

double sensitivity_dbm(int mcs, int width_channels, const PhyMacParams& p) {
  check_mcs(mcs);
  check_width(width_channels);
  return p.sensitivity_dbm[mcs] + 3.0 * std::countr_zero(static_cast<unsigned>(width_channels));
}

int select_mcs(double rx_power_dbm, int width_channels, const PhyMacParams& p) {
  check_width(width_channels);
  for (int m = kMcsCount - 1; m >= 0; --m) {
    if (sensitivity_dbm(m, width_channels, p) <= rx_power_dbm) return m;
  }
  throw LinkInfeasible("received power " + std::to_string(rx_power_dbm) + " dBm is below the MCS 0 sensitivity at " +
                           std::to_string(20 * width_channels) + " MHz",
                       rx_power_dbm);
}

double bits_per_symbol(int mcs, int width_channels, const PhyMacParams& p) {
  check_width(width_channels);
  const Modulation m = modulation(mcs);
  const double bits_per_point = std::log2(static_cast<double>(m.constellation_points));
  return static_cast<double>(p.subcarriers) * width_channels * p.spatial_streams * bits_per_point *
         m.code_numerator / m.code_denominator;
}

}  // namespace wlansim::phy
