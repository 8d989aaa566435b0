#include "wlansim/sim/time.hpp"

#include <cmath>
#include <cstdlib>

namespace wlansim {

Duration from_seconds(double seconds) {
  return Duration(static_cast<std::int64_t>(std::llround(seconds * 1e9)));
}

std::string format_micros(SimTime t) {
  const std::int64_t ns = t.count();
  const std::int64_t whole = ns / 1000;
  const std::int64_t frac = std::llabs(ns % 1000);
  std::string out = (ns < 0 && whole == 0) ? "-0" : std::to_string(whole);
  out += '.';
  if (frac < 100) out += '0';
  if (frac < 10) out += '0';
  out += std::to_string(frac);
  return out;
}

}  // namespace wlansim
