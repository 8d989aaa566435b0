#include "wlansim/phy/channel_set.hpp"

#include "wlansim/error.hpp"

namespace wlansim::phy {

ChannelSet ChannelSet::range(int first, int last, int primary) {
  if (first < 0 || last >= kMaxChannels || first > last) {
    throw ConfigError("channel range [" + std::to_string(first) + ", " + std::to_string(last) + "] outside 0.." +
                      std::to_string(kMaxChannels - 1));
  }
  std::uint8_t mask = 0;
  for (int c = first; c <= last; ++c) mask |= static_cast<std::uint8_t>(1u << c);
  return {mask, primary};
}

bool ChannelSet::valid_for_transmission() const {
  if (mask == 0 || !contains(primary)) return false;
  const int w = width();
  if (!std::has_single_bit(static_cast<unsigned>(w))) return false;
  const int lo = lowest();
  if (highest() - lo + 1 != w) return false;
  return lo % w == 0;
}

std::vector<int> ChannelSet::channels() const {
  std::vector<int> out;
  for (int c = 0; c < kMaxChannels; ++c) {
    if (contains(c)) out.push_back(c);
  }
  return out;
}

std::string ChannelSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int c : channels()) {
    if (!first) out += ',';
    out += std::to_string(c);
    first = false;
  }
  out += "}p" + std::to_string(primary);
  return out;
}

std::vector<ChannelSet> transmission_candidates(const ChannelSet& within) {
  std::vector<ChannelSet> out;
  for (int w = 1; w <= kMaxChannels; w *= 2) {
    const int lo = (within.primary / w) * w;
    std::uint8_t mask = 0;
    for (int c = lo; c < lo + w; ++c) mask |= static_cast<std::uint8_t>(1u << c);
    const ChannelSet candidate{mask, within.primary};
    if (within.contains(candidate)) out.push_back(candidate);
  }
  return out;
}

}  // namespace wlansim::phy
