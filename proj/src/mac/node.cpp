#include "wlansim/mac/node.hpp"

namespace wlansim::mac {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kSensing: return "SENSING";
    case Mode::kTransmit: return "TRANSMIT";
    case Mode::kReceive: return "RECEIVE";
    case Mode::kWaitCts: return "WAIT_CTS";
    case Mode::kWaitData: return "WAIT_DATA";
    case Mode::kWaitAck: return "WAIT_ACK";
    case Mode::kNav: return "NAV";
  }
  return "?";
}

std::string_view to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::kRts: return "RTS";
    case FrameKind::kCts: return "CTS";
    case FrameKind::kData: return "DATA";
    case FrameKind::kBack: return "BACK";
  }
  return "?";
}

std::string_view to_string(TimeoutKind kind) {
  switch (kind) {
    case TimeoutKind::kCts: return "CTS";
    case TimeoutKind::kData: return "DATA";
    case TimeoutKind::kAck: return "ACK";
  }
  return "?";
}

Mode wait_mode(TimeoutKind kind) {
  switch (kind) {
    case TimeoutKind::kCts: return Mode::kWaitCts;
    case TimeoutKind::kData: return Mode::kWaitData;
    case TimeoutKind::kAck: return Mode::kWaitAck;
  }
  return Mode::kWaitCts;
}

}  // namespace wlansim::mac
