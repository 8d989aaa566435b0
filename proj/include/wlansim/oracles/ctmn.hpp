#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlansim/io/scenario.hpp"
#include "wlansim/oracles/contention.hpp"
#include "wlansim/phy/params.hpp"

namespace wlansim::oracles {

/// Bit w set iff WLAN w is transmitting.
using CtmnState = std::uint32_t;
inline constexpr std::size_t kMaxCtmnWlans = 20;

/// Independent sets of `g` including the empty set, ordered by size then by
/// bit pattern. Throws ConfigError beyond kMaxCtmnWlans WLANs.
std::vector<CtmnState> ctmn_enumerate(const ContentionGraph& g);

struct CtmnRates {
  double lambda = 0.0;  // activation, 1/s
  double mu = 0.0;      // departure, 1/s
};

/// lambda = 1 / (E[BO] * T_e) and mu = 1 / (exchange airtime + DIFS).
CtmnRates ctmn_rates(const phy::PhyMacParams& p, int mcs, int n_agg, int width_channels = 1);

struct CtmnModel {
  std::vector<std::string> wlans;
  std::vector<CtmnState> states;
  std::vector<double> lambda;
  std::vector<double> mu;
  std::vector<double> generator;  // row-major, states x states

  std::size_t size() const { return states.size(); }
  double rate(std::size_t from, std::size_t to) const { return generator[from * states.size() + to]; }
  /// -1 if absent.
  int index_of(CtmnState s) const;
};

/// Transitions join states that differ in exactly one WLAN: activation at
/// lambda, departure at mu. Throws ContractViolation for non-positive rates.
CtmnModel ctmn_model(std::vector<std::string> wlans, std::vector<CtmnState> states, std::vector<double> lambda,
                     std::vector<double> mu);

/// States are the independent sets of `g`.
CtmnModel ctmn_model(const ContentionGraph& g, const std::vector<double>& lambda, const std::vector<double>& mu);

/// Chain derived from additive sensing: WLAN w may start in state s iff the
/// summed power of the APs active in s stays below w's CCA threshold at w's
/// AP. States are those reachable from the empty state.
CtmnModel ctmn_model(const io::ScenarioConfig& config);

/// Solves pi Q = 0, sum(pi) = 1 by Gaussian elimination with partial pivoting.
/// Throws Error if the system is singular or the residual exceeds 1e-10.
std::vector<double> ctmn_stationary(const CtmnModel& model);

/// max_j |(pi Q)_j|.
double ctmn_residual(const CtmnModel& model, const std::vector<double>& pi);

/// Probability that each WLAN is transmitting.
std::vector<double> ctmn_activity(const CtmnModel& model, const std::vector<double>& pi);

/// P(w active) * mu_w * payload_bits_w.
std::vector<double> ctmn_throughput(const CtmnModel& model, const std::vector<double>& pi,
                                    const std::vector<double>& payload_bits);

/// Per-WLAN throughput of a scenario, in WLAN order of first appearance.
std::vector<double> ctmn_scenario_throughput(const io::ScenarioConfig& config);

}  // namespace wlansim::oracles
