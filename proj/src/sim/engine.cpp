#include "wlansim/sim/engine.hpp"

#include <exception>
#include <tuple>

namespace wlansim::sim {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kFrameEnd: return "frame-end";
    case EventKind::kNavExpiry: return "nav-expiry";
    case EventKind::kBackoffExpiry: return "backoff-expiry";
    case EventKind::kTimeoutExpiry: return "timeout-expiry";
    case EventKind::kFrameStart: return "frame-start";
    case EventKind::kTrafficArrival: return "traffic-arrival";
    case EventKind::kSimEnd: return "sim-end";
  }
  return "unknown";
}

bool dispatches_before(const Event& a, const Event& b) {
  return std::make_tuple(a.fire_time, priority(a.kind), a.origin, a.seq) <
         std::make_tuple(b.fire_time, priority(b.kind), b.origin, b.seq);
}

EventHandle Engine::schedule(SimTime fire_time, EventKind kind, NodeId origin, std::uint64_t payload) {
  if (fire_time < now_) {
    throw ContractViolation("event " + std::string(to_string(kind)) + " scheduled at " +
                            format_micros(fire_time) + " us, before the clock (" + format_micros(now_) + " us)");
  }
  std::uint32_t slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
  } else {
    slot = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }
  Slot& s = slots_[slot];
  s.event = Event{fire_time, kind, origin, payload, next_seq_++};
  s.live = true;
  const auto pos = static_cast<std::uint32_t>(heap_.size());
  heap_.push_back(slot);
  s.heap_pos = pos;
  sift_up(pos);
  return EventHandle(slot, s.generation);
}

bool Engine::pending(const EventHandle& handle) const {
  if (handle.empty() || handle.slot_ >= slots_.size()) return false;
  const Slot& s = slots_[handle.slot_];
  return s.live && s.generation == handle.generation_;
}

SimTime Engine::fire_time(const EventHandle& handle) const { return slots_[handle.slot_].event.fire_time; }

bool Engine::cancel(EventHandle& handle) {
  if (!pending(handle)) {
    handle = EventHandle();
    return false;
  }
  const std::uint32_t slot = handle.slot_;
  remove_at(slots_[slot].heap_pos);
  release(slot);
  handle = EventHandle();
  return true;
}

SimTime Engine::run_until(SimTime t_end, const Dispatcher& dispatch) {
  if (t_end < now_) {
    throw ContractViolation("run_until target " + format_micros(t_end) + " us is before the clock");
  }
  while (!heap_.empty()) {
    const std::uint32_t slot = heap_.front();
    if (slots_[slot].event.fire_time > t_end) break;
    const Event event = slots_[slot].event;
    remove_at(0);
    release(slot);
    now_ = event.fire_time;
    ++dispatched_;
    try {
      dispatch(event);
    } catch (const SimulationAborted&) {
      throw;
    } catch (const std::exception& e) {
      throw SimulationAborted("run aborted at " + format_micros(now_) + " us while dispatching " +
                                  std::string(to_string(event.kind)) + " (node " + std::to_string(event.origin) +
                                  ", seq " + std::to_string(event.seq) + "): " + e.what(),
                              event);
    }
  }
  now_ = t_end;
  return now_;
}

void Engine::place(std::uint32_t pos, std::uint32_t slot) {
  heap_[pos] = slot;
  slots_[slot].heap_pos = pos;
}

void Engine::sift_up(std::uint32_t pos) {
  const std::uint32_t slot = heap_[pos];
  while (pos > 0) {
    const std::uint32_t parent = (pos - 1) / 2;
    if (!less(slot, heap_[parent])) break;
    place(pos, heap_[parent]);
    pos = parent;
  }
  place(pos, slot);
}

void Engine::sift_down(std::uint32_t pos) {
  const std::uint32_t slot = heap_[pos];
  const auto n = static_cast<std::uint32_t>(heap_.size());
  for (;;) {
    std::uint32_t child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && less(heap_[child + 1], heap_[child])) ++child;
    if (!less(heap_[child], slot)) break;
    place(pos, heap_[child]);
    pos = child;
  }
  place(pos, slot);
}

void Engine::remove_at(std::uint32_t pos) {
  const std::uint32_t last = heap_.back();
  heap_.pop_back();
  if (pos == heap_.size()) return;
  place(pos, last);
  if (pos > 0 && less(last, heap_[(pos - 1) / 2])) {
    sift_up(pos);
  } else {
    sift_down(pos);
  }
}

void Engine::release(std::uint32_t slot) {
  Slot& s = slots_[slot];
  s.live = false;
  ++s.generation;
  free_slots_.push_back(slot);
}

}  // namespace wlansim::sim
