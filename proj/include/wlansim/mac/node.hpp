#pragma once

#include <cstdint>
#include <string_view>

#include "wlansim/phy/channel_set.hpp"
#include "wlansim/phy/frames.hpp"
#include "wlansim/sim/engine.hpp"
#include "wlansim/sim/time.hpp"

namespace wlansim::mac {

enum class Mode : std::uint8_t { kSensing, kTransmit, kReceive, kWaitCts, kWaitData, kWaitAck, kNav };
std::string_view to_string(Mode mode);

enum class FrameKind : std::uint8_t { kRts, kCts, kData, kBack };
std::string_view to_string(FrameKind kind);

enum class TimeoutKind : std::uint8_t { kCts, kData, kAck };
std::string_view to_string(TimeoutKind kind);

/// The WAIT mode a timeout of this kind must find its node in.
Mode wait_mode(TimeoutKind kind);

// kCounting: expiry scheduled (possibly still inside DIFS).
// kFrozen: sensing, primary busy. kSuspended: node in NAV or away from SENSING.
enum class BackoffPhase : std::uint8_t { kNone, kCounting, kFrozen, kSuspended };

/// A frame in the air.
struct Notification {
  std::uint64_t id = 0;
  sim::NodeId tx = sim::kNoNode;
  sim::NodeId rx = sim::kNoNode;
  FrameKind kind = FrameKind::kRts;
  phy::ChannelSet channels;
  double tx_power_dbm = 0.0;
  SimTime start{0};
  Duration duration{0};
  Duration nav{0};  // reservation after this frame ends (RTS/CTS only)
  int mcs = 0;
  int n_agg = 1;
};

/// Frame a node is currently decoding.
struct Reception {
  std::uint64_t frame = 0;  // 0 = none
  bool addressed = false;
  bool ok = true;
  double signal_dbm = 0.0;

  bool active() const { return frame != 0; }
};

/// Parameters of the RTS/CTS/DATA/BACK exchange a node takes part in.
struct Exchange {
  sim::NodeId peer = sim::kNoNode;
  phy::ChannelSet channels;
  int mcs = 0;
  int n_agg = 1;
  phy::FrameDurations durations;
  SimTime started{0};
};

struct NodeCounters {
  std::uint64_t attempts = 0;
  std::uint64_t successes = 0;
  std::uint64_t cts_timeouts = 0;
  std::uint64_t data_timeouts = 0;
  std::uint64_t ack_timeouts = 0;
  std::uint64_t rx_discarded = 0;  // receptions broken by interference
  std::uint64_t nav_updates = 0;
  std::uint64_t deferrals = 0;  // SCB found a busy secondary
  std::uint64_t frames_sent = 0;
  std::uint64_t transitions = 0;
};

struct NodeState {
  Mode mode = Mode::kSensing;
  Mode resume_mode = Mode::kSensing;  // where a failed awaited reception returns to

  BackoffPhase phase = BackoffPhase::kNone;
  Duration backoff_remaining{0};
  SimTime countdown_from{0};
  sim::EventHandle backoff_event;
  int cw = 0;

  SimTime nav_until{0};
  sim::EventHandle nav_event;

  sim::EventHandle timeout_event;
  TimeoutKind timeout_kind = TimeoutKind::kCts;

  Reception rx;
  Exchange exchange;
  NodeCounters counters;
};

}  // namespace wlansim::mac
