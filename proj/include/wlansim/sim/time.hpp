#pragma once

#include <chrono>
#include <cstdint>
#include <string>

namespace wlansim {

// Simulation time is an integer count of nanoseconds since the start of the
// run. Every protocol constant is a whole number of microseconds, so sums of
// durations compare exactly and simultaneous events really are simultaneous.
using Duration = std::chrono::nanoseconds;
using SimTime = std::chrono::nanoseconds;

constexpr Duration micros(std::int64_t us) { return std::chrono::microseconds(us); }

constexpr double to_seconds(Duration d) { return static_cast<double>(d.count()) * 1e-9; }
constexpr double to_micros(Duration d) { return static_cast<double>(d.count()) * 1e-3; }

/// Rounds to the nearest nanosecond.
Duration from_seconds(double seconds);

/// Fixed three-decimal microsecond rendering used by traces and logs.
std::string format_micros(SimTime t);

}  // namespace wlansim
