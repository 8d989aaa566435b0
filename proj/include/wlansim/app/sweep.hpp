#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wlansim/app/run.hpp"

namespace wlansim::app {

/// "A..B" (inclusive) or a comma-separated list. Throws ConfigError.
std::vector<int> parse_int_axis(std::string_view text);
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

struct SweepSpec {
  RunSpec base;                // scenario is ignored when wlan_counts is set
  std::vector<int> wlan_counts;  // empty: sweep seeds over base.scenario
  std::vector<std::uint64_t> seeds;
  unsigned threads = 0;        // 0: hardware concurrency
};

struct SweepPoint {
  int n_wlans = 0;
  std::size_t seeds = 0;
  double throughput_mbps_mean = 0.0;  // per WLAN
  double throughput_mbps_std = 0.0;   // across seeds
  double aggregate_mbps_mean = 0.0;
  double collision_prob_mean = 0.0;
  double collision_prob_std = 0.0;
  double bianchi_throughput_mbps = 0.0;
  double bianchi_collision_prob = 0.0;
  double events_dispatched = 0.0;  // mean across seeds
  double wall_clock_s = 0.0;       // mean across seeds
};

/// Runs every (point, seed) pair in parallel, each into its own directory
/// (`n<N>/seed<S>/` or `seed<S>/`), and returns one row per point in axis
/// order. The first failing point aborts the sweep with its label.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec);

std::string format_sweep_csv(const std::vector<SweepPoint>& points);

}  // namespace wlansim::app
