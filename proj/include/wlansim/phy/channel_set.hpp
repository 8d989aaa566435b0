#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace wlansim::phy {

inline constexpr int kMaxChannels = 8;

/// Set of basic 20 MHz channels (bit i = channel i) plus the primary channel.
struct ChannelSet {
  std::uint8_t mask = 0;
  int primary = 0;

  static ChannelSet range(int first, int last, int primary);
  static ChannelSet single(int channel) { return {static_cast<std::uint8_t>(1u << channel), channel}; }

  bool contains(int channel) const { return channel >= 0 && channel < kMaxChannels && ((mask >> channel) & 1u); }
  bool contains(const ChannelSet& other) const { return (mask & other.mask) == other.mask; }
  bool overlaps(const ChannelSet& other) const { return (mask & other.mask) != 0; }
  int width() const { return std::popcount(mask); }
  bool empty() const { return mask == 0; }
  int lowest() const { return std::countr_zero(mask); }
  int highest() const { return 7 - std::countl_zero(mask); }

  /// Contiguous, power-of-two sized, aligned to its own width, and containing
  /// the primary: the shapes a bonded transmission may take.
  bool valid_for_transmission() const;

  std::vector<int> channels() const;
  std::string to_string() const;

  friend bool operator==(const ChannelSet&, const ChannelSet&) = default;
};

/// Every valid transmission set with the given primary that lies inside `within`,
/// narrowest first.
std::vector<ChannelSet> transmission_candidates(const ChannelSet& within);

}  // namespace wlansim::phy
