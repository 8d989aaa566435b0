#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "wlansim/error.hpp"
#include "wlansim/sim/time.hpp"

namespace wlansim::sim {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Declaration order is the dispatch priority for events sharing a timestamp
// (lower first): a medium released at t is already free for anything else
// happening at t, and new transmissions are announced after every backoff
// expiring at the same instant has been evaluated.
enum class EventKind : std::uint8_t {
  kFrameEnd = 0,
  kNavExpiry,
  kBackoffExpiry,
  kTimeoutExpiry,
  kFrameStart,
  kTrafficArrival,
  kSimEnd,
};

constexpr int priority(EventKind kind) { return static_cast<int>(kind); }
std::string_view to_string(EventKind kind);

struct Event {
  SimTime fire_time{0};
  EventKind kind = EventKind::kSimEnd;
  NodeId origin = kNoNode;
  std::uint64_t payload = 0;
  std::uint64_t seq = 0;
};

/// Dispatch order key: (fire_time, priority, origin, seq).
bool dispatches_before(const Event& a, const Event& b);

/// Identifies a scheduled event for cancellation. Default-constructed handles
/// are never valid.
class EventHandle {
 public:
  EventHandle() = default;
  bool empty() const { return slot_ == kInvalid; }

 private:
  friend class Engine;
  static constexpr std::uint32_t kInvalid = std::numeric_limits<std::uint32_t>::max();
  EventHandle(std::uint32_t slot, std::uint32_t generation) : slot_(slot), generation_(generation) {}
  std::uint32_t slot_ = kInvalid;
  std::uint32_t generation_ = 0;
};

/// Raised when a dispatcher throws; carries the clock and the offending event.
class SimulationAborted : public ContractViolation {
 public:
  SimulationAborted(const std::string& what, Event event) : ContractViolation(what), event_(event) {}
  const Event& event() const noexcept { return event_; }

 private:
  Event event_;
};

/// Future-event set with O(log n) insertion and true removal on cancel.
///
/// Not thread-safe; one engine drives exactly one run.
class Engine {
 public:
  using Dispatcher = std::function<void(const Event&)>;

  SimTime now() const { return now_; }

  /// Throws ContractViolation if `fire_time` is before now().
  EventHandle schedule(SimTime fire_time, EventKind kind, NodeId origin, std::uint64_t payload = 0);

  /// True iff the event was still pending; the event will never fire.
  bool cancel(EventHandle& handle);

  bool pending(const EventHandle& handle) const;

  /// Fire time of a pending event; undefined for stale handles.
  SimTime fire_time(const EventHandle& handle) const;

  /// Dispatches events in order while their fire time is <= t_end, then sets
  /// the clock to t_end. Returns the final clock.
  SimTime run_until(SimTime t_end, const Dispatcher& dispatch);

  std::size_t size() const { return heap_.size(); }
  std::uint64_t dispatched() const { return dispatched_; }
  std::uint64_t scheduled() const { return next_seq_; }

 private:
  struct Slot {
    Event event;
    std::uint32_t heap_pos = 0;
    std::uint32_t generation = 0;
    bool live = false;
  };

  bool less(std::uint32_t a, std::uint32_t b) const {
    return dispatches_before(slots_[a].event, slots_[b].event);
  }
  void sift_up(std::uint32_t pos);
  void sift_down(std::uint32_t pos);
  void place(std::uint32_t pos, std::uint32_t slot);
  void remove_at(std::uint32_t pos);
  void release(std::uint32_t slot);

  std::vector<Slot> slots_;
  std::vector<std::uint32_t> free_slots_;
  std::vector<std::uint32_t> heap_;
  SimTime now_{0};
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
};

}  // namespace wlansim::sim
