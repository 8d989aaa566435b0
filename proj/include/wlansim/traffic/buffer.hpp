#pragma once

#include <cstdint>
#include <deque>

#include "wlansim/phy/params.hpp"
#include "wlansim/sim/time.hpp"

namespace wlansim::traffic {

struct Mpdu {
  SimTime generated{0};
  int bits = 0;
};

/// Result of acknowledging the head of the buffer.
struct Delivery {
  int mpdus = 0;
  std::int64_t bits = 0;
  double delay_sum_s = 0.0;  // sum over MPDUs of (ack time - generation time)
};

/// Bounded FIFO with drop-tail. MPDUs stay queued until they are acknowledged,
/// so a failed A-MPDU is retransmitted unchanged.
class Buffer {
 public:
  explicit Buffer(int capacity);

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(queue_.size()); }
  bool empty() const { return queue_.empty(); }
  const Mpdu& front() const { return queue_.front(); }

  /// False (and the MPDU counted as dropped) when full.
  bool enqueue(const Mpdu& mpdu);

  /// Tops the buffer up to capacity with MPDUs generated at `now`. Returns the
  /// number added.
  int refill(SimTime now, int bits);

  /// Removes the first `count` MPDUs, acknowledged at `ack_time`.
  Delivery commit(int count, SimTime ack_time);

  std::uint64_t generated() const { return generated_; }
  std::uint64_t dropped() const { return dropped_; }
  std::uint64_t delivered() const { return delivered_; }

 private:
  int capacity_;
  std::deque<Mpdu> queue_;
  std::uint64_t generated_ = 0;
  std::uint64_t dropped_ = 0;
  std::uint64_t delivered_ = 0;
};

/// Size of the next A-MPDU: min(occupancy, n_agg_max, largest count whose
/// PPDU fits in max_ppdu). Peeks only; nothing is removed. Throws
/// ContractViolation on an empty buffer.
int dequeue_aggregate(const Buffer& buffer, int n_agg_max, int mcs, int width_channels, const phy::PhyMacParams& p);

}  // namespace wlansim::traffic
