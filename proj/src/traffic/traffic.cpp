#include "wlansim/traffic/traffic.hpp"

#include "wlansim/error.hpp"

namespace wlansim::traffic {

std::string_view to_string(TrafficKind kind) {
  switch (kind) {
    case TrafficKind::kFullBuffer: return "full_buffer";
    case TrafficKind::kPoisson: return "poisson";
    case TrafficKind::kDeterministic: return "deterministic";
  }
  return "unknown";
}

std::optional<TrafficKind> parse_traffic_kind(std::string_view text) {
  if (text == "full_buffer") return TrafficKind::kFullBuffer;
  if (text == "poisson") return TrafficKind::kPoisson;
  if (text == "deterministic") return TrafficKind::kDeterministic;
  return std::nullopt;
}

void TrafficModel::validate() const {
  if (kind != TrafficKind::kFullBuffer && !(load_pps > 0.0)) {
    throw ConfigError(std::string(to_string(kind)) + " traffic needs a positive load");
  }
}

std::optional<SimTime> next_arrival(const TrafficModel& model, sim::RandomStream& rng, SimTime now) {
  switch (model.kind) {
    case TrafficKind::kFullBuffer:
      return std::nullopt;
    case TrafficKind::kPoisson:
      return now + from_seconds(rng.exponential(model.load_pps));
    case TrafficKind::kDeterministic:
      return now + from_seconds(1.0 / model.load_pps);
  }
  return std::nullopt;
}

}  // namespace wlansim::traffic
