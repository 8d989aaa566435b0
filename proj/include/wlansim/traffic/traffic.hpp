#pragma once

#include <optional>
#include <string_view>

#include "wlansim/sim/random.hpp"
#include "wlansim/sim/time.hpp"

namespace wlansim::traffic {

enum class TrafficKind { kFullBuffer, kPoisson, kDeterministic };

std::string_view to_string(TrafficKind kind);
std::optional<TrafficKind> parse_traffic_kind(std::string_view text);

struct TrafficModel {
  TrafficKind kind = TrafficKind::kFullBuffer;
  double load_pps = 0.0;  // ignored for full buffer

  /// Throws ConfigError when a non-saturated model has no positive load.
  void validate() const;
};

/// Time of the next packet arrival after `now`, or nullopt for full buffer
/// (saturation is kept by refilling the buffer on every commit instead).
std::optional<SimTime> next_arrival(const TrafficModel& model, sim::RandomStream& rng, SimTime now);

}  // namespace wlansim::traffic
