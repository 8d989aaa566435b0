#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "wlansim/phy/channel_set.hpp"
#include "wlansim/sim/random.hpp"

namespace wlansim::mac {

/// Dynamic channel bonding policy applied when a backoff expires.
enum class DcbPolicy {
  kOnlyPrimary,           // OP: transmit on the primary only
  kStatic,                // SCB: whole allocation or nothing
  kAlwaysMax,             // AM: widest free valid set
  kProbabilisticUniform,  // PU: uniform among free valid sets
};

std::string_view to_string(DcbPolicy policy);
std::optional<DcbPolicy> parse_dcb_policy(std::string_view text);

/// Channels to transmit on given the set of currently free channels, or
/// nullopt when the policy forbids transmitting now (SCB with a busy
/// secondary). `allocated.primary` must be free; ContractViolation otherwise.
std::optional<phy::ChannelSet> dcb_select_channels(DcbPolicy policy, std::uint8_t free_mask,
                                                   const phy::ChannelSet& allocated, sim::RandomStream& rng);

}  // namespace wlansim::mac
