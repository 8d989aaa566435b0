#include "wlansim/traffic/buffer.hpp"

#include <algorithm>
#include <string>

#include "wlansim/error.hpp"
#include "wlansim/phy/frames.hpp"

namespace wlansim::traffic {

Buffer::Buffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw ConfigError("buffer capacity must be >= 1");
}

bool Buffer::enqueue(const Mpdu& mpdu) {
  ++generated_;
  if (size() >= capacity_) {
    ++dropped_;
    return false;
  }
  queue_.push_back(mpdu);
  return true;
}

int Buffer::refill(SimTime now, int bits) {
  const int missing = capacity_ - size();
  for (int i = 0; i < missing; ++i) queue_.push_back(Mpdu{now, bits});
  generated_ += static_cast<std::uint64_t>(missing);
  return missing;
}

Delivery Buffer::commit(int count, SimTime ack_time) {
  if (count < 0 || count > size()) {
    throw ContractViolation("commit of " + std::to_string(count) + " MPDUs with " + std::to_string(size()) + " queued");
  }
  Delivery d;
  for (int i = 0; i < count; ++i) {
    const Mpdu& m = queue_.front();
    d.bits += m.bits;
    d.delay_sum_s += to_seconds(ack_time - m.generated);
    queue_.pop_front();
  }
  d.mpdus = count;
  delivered_ += static_cast<std::uint64_t>(count);
  return d;
}

int dequeue_aggregate(const Buffer& buffer, int n_agg_max, int mcs, int width_channels, const phy::PhyMacParams& p) {
  if (buffer.empty()) throw ContractViolation("aggregation requested on an empty buffer");
  if (n_agg_max < 1) throw ContractViolation("n_agg_max must be >= 1");
  const int fits = phy::max_aggregation(p, mcs, width_channels);
  if (fits == 0) {
    throw AggregationOverflow("a single MPDU at MCS " + std::to_string(mcs) + " exceeds the PPDU limit", 0);
  }
  return std::min({buffer.size(), n_agg_max, fits});
}

}  // namespace wlansim::traffic
