#include "wlansim/mac/dcb.hpp"

#include <vector>

#include "wlansim/error.hpp"

namespace wlansim::mac {

std::string_view to_string(DcbPolicy policy) {
  switch (policy) {
    case DcbPolicy::kOnlyPrimary: return "OP";
    case DcbPolicy::kStatic: return "SCB";
    case DcbPolicy::kAlwaysMax: return "AM";
    case DcbPolicy::kProbabilisticUniform: return "PU";
  }
  return "?";
}

std::optional<DcbPolicy> parse_dcb_policy(std::string_view text) {
  if (text == "OP") return DcbPolicy::kOnlyPrimary;
  if (text == "SCB") return DcbPolicy::kStatic;
  if (text == "AM") return DcbPolicy::kAlwaysMax;
  if (text == "PU") return DcbPolicy::kProbabilisticUniform;
  return std::nullopt;
}

std::optional<phy::ChannelSet> dcb_select_channels(DcbPolicy policy, std::uint8_t free_mask,
                                                   const phy::ChannelSet& allocated, sim::RandomStream& rng) {
  if (!allocated.contains(allocated.primary)) {
    throw ContractViolation("allocation " + allocated.to_string() + " does not contain its primary");
  }
  if (((free_mask >> allocated.primary) & 1u) == 0) {
    throw ContractViolation("channel selection with a busy primary (" + std::to_string(allocated.primary) + ")");
  }

  switch (policy) {
    case DcbPolicy::kOnlyPrimary:
      return phy::ChannelSet::single(allocated.primary);
    case DcbPolicy::kStatic:
      if ((allocated.mask & free_mask) == allocated.mask) return allocated;
      return std::nullopt;
    case DcbPolicy::kAlwaysMax:
    case DcbPolicy::kProbabilisticUniform: {
      std::vector<phy::ChannelSet> free_sets;
      for (const phy::ChannelSet& c : phy::transmission_candidates(allocated)) {
        if ((c.mask & free_mask) == c.mask) free_sets.push_back(c);
      }
      // The primary alone is always a candidate, so free_sets is non-empty.
      if (policy == DcbPolicy::kAlwaysMax) return free_sets.back();
      const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(free_sets.size()) - 1);
      return free_sets[static_cast<std::size_t>(pick)];
    }
  }
  return std::nullopt;
}

}  // namespace wlansim::mac
