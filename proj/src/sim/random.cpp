#include "wlansim/sim/random.hpp"

#include <array>
#include <string>

#include "wlansim/error.hpp"

namespace wlansim::sim {

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw ContractViolation("uniform_int: empty range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  if (lo == hi) return lo;
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  return dist(engine_);
}

double RandomStream::exponential(double rate) {
  if (!(rate > 0.0)) throw ContractViolation("exponential: rate must be positive");
  std::exponential_distribution<double> dist(rate);
  return dist(engine_);
}

double RandomStream::uniform01() {
  return std::generate_canonical<double, 53>(engine_);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master & 0xffffffffu), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stream & 0xffffffffu), static_cast<std::uint32_t>(stream >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (std::uint64_t{words[1]} << 32) | words[0];
}

RandomStream derive_stream(std::uint64_t master, std::uint64_t stream) {
  return RandomStream(derive_seed(master, stream));
}

}  // namespace wlansim::sim
