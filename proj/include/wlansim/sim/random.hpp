#pragma once

#include <cstdint>
#include <random>

namespace wlansim::sim {

/// Seeded pseudo-random stream. Equal seeds give equal draw sequences.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Uniform integer in [lo, hi], both inclusive. Throws ContractViolation if lo > hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Exponential variate with mean 1/rate. Throws ContractViolation if rate <= 0.
  double exponential(double rate);

  /// Uniform real in [0, 1).
  double uniform01();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Stream splitting rule: stream k of a run seeded with `master` is seeded with
// the first 64 bits produced by std::seed_seq{lo32(master), hi32(master), lo32(k), hi32(k)}.
// Stream 0 is reserved for scenario-level draws and stream i + 1 belongs to
// node i, so one node's draws never shift another node's sequence.
inline constexpr std::uint64_t kScenarioStream = 0;
inline constexpr std::uint64_t node_stream(std::uint32_t node) { return std::uint64_t{node} + 1; }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);
RandomStream derive_stream(std::uint64_t master, std::uint64_t stream);

}  // namespace wlansim::sim
