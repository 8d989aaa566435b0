#include "wlansim/oracles/ctmn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <map>
#include <span>
#include <string>

#include "wlansim/error.hpp"
#include "wlansim/phy/frames.hpp"
#include "wlansim/phy/propagation.hpp"
#include "wlansim/simd/kernels.hpp"

namespace wlansim::oracles {

namespace {

bool canonical_less(CtmnState a, CtmnState b) {
  const int pa = std::popcount(a);
  const int pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

void check_size(std::size_t n) {
  if (n > kMaxCtmnWlans) {
    throw ConfigError("CTMN limited to " + std::to_string(kMaxCtmnWlans) + " WLANs, got " + std::to_string(n));
  }
}

}  // namespace

std::vector<CtmnState> ctmn_enumerate(const ContentionGraph& g) {
  const std::size_t n = g.size();
  check_size(n);
  std::vector<CtmnState> out;
  // Grow independent sets one WLAN at a time, only adding WLANs above the
  // current highest member so each set is produced once.
  std::vector<CtmnState> frontier{0};
  while (!frontier.empty()) {
    std::vector<CtmnState> next;
    for (CtmnState s : frontier) {
      out.push_back(s);
      const std::size_t start = s == 0 ? 0 : static_cast<std::size_t>(32 - std::countl_zero(s));
      for (std::size_t w = start; w < n; ++w) {
        if ((g.neighbours(w) & s) == 0) next.push_back(s | (1u << w));
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

CtmnRates ctmn_rates(const phy::PhyMacParams& p, int mcs, int n_agg, int width_channels) {
  const phy::FrameDurations d = phy::frame_durations(p, n_agg, mcs, width_channels);
  const double mean_backoff = 0.5 * p.contention_window * to_seconds(p.empty_slot);
  if (!(mean_backoff > 0.0)) throw ConfigError("CTMN activation rate needs a contention window > 0");
  return CtmnRates{1.0 / mean_backoff, 1.0 / to_seconds(phy::exchange_airtime(p, d) + p.difs)};
}

int CtmnModel::index_of(CtmnState s) const {
  const auto it = std::lower_bound(states.begin(), states.end(), s, canonical_less);
  return it != states.end() && *it == s ? static_cast<int>(it - states.begin()) : -1;
}

CtmnModel ctmn_model(std::vector<std::string> wlans, std::vector<CtmnState> states, std::vector<double> lambda,
                     std::vector<double> mu) {
  check_size(wlans.size());
  if (lambda.size() != wlans.size() || mu.size() != wlans.size()) {
    throw ContractViolation("one activation and one departure rate per WLAN required");
  }
  for (std::size_t w = 0; w < wlans.size(); ++w) {
    if (!(lambda[w] > 0.0) || !(mu[w] > 0.0)) throw ContractViolation("CTMN rates must be positive");
  }
  std::sort(states.begin(), states.end(), canonical_less);
  states.erase(std::unique(states.begin(), states.end()), states.end());

  CtmnModel m{std::move(wlans), std::move(states), std::move(lambda), std::move(mu), {}};
  const std::size_t k = m.states.size();
  m.generator.assign(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double out_rate = 0.0;
    for (std::size_t w = 0; w < m.wlans.size(); ++w) {
      const CtmnState bit = 1u << w;
      const CtmnState target = m.states[i] ^ bit;
      const int j = m.index_of(target);
      if (j < 0) continue;
      const double r = (m.states[i] & bit) ? m.mu[w] : m.lambda[w];
      m.generator[i * k + static_cast<std::size_t>(j)] = r;
      out_rate += r;
    }
    m.generator[i * k + i] = -out_rate;
  }
  return m;
}

CtmnModel ctmn_model(const ContentionGraph& g, const std::vector<double>& lambda, const std::vector<double>& mu) {
  return ctmn_model(g.wlans(), ctmn_enumerate(g), lambda, mu);
}

CtmnModel ctmn_model(const io::ScenarioConfig& config) {
  const auto wlans = summarize_wlans(config);
  const std::size_t n = wlans.size();
  check_size(n);
  const auto power = ap_power_matrix(config, wlans);

  std::vector<std::string> names;
  std::vector<double> lambda;
  std::vector<double> mu;
  for (const WlanSummary& w : wlans) {
    names.push_back(w.wlan_code);
    const CtmnRates r = ctmn_rates(config.params, w.mcs, w.n_agg, w.channels.width());
    lambda.push_back(r.lambda);
    mu.push_back(r.mu);
  }

  auto can_start = [&](CtmnState s, std::size_t w) {
    double sum_mw = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (((s >> v) & 1u) && wlans[v].channels.contains(wlans[w].channels.primary)) {
        sum_mw += phy::dbm_to_mw(power[v * n + w]);
      }
    }
    return phy::mw_to_dbm(sum_mw) < wlans[w].cca_dbm;
  };

  std::map<CtmnState, bool> seen{{0u, true}};
  std::deque<CtmnState> queue{0u};
  while (!queue.empty()) {
    const CtmnState s = queue.front();
    queue.pop_front();
    for (std::size_t w = 0; w < n; ++w) {
      const CtmnState bit = 1u << w;
      CtmnState t;
      if (s & bit) {
        t = s ^ bit;
      } else if (can_start(s, w)) {
        t = s | bit;
      } else {
        continue;
      }
      if (seen.emplace(t, true).second) queue.push_back(t);
    }
  }
  std::vector<CtmnState> states;
  for (const auto& [s, unused] : seen) states.push_back(s);

  // Activation edges must respect sensing even between two reachable states.
  CtmnModel m = ctmn_model(std::move(names), std::move(states), std::move(lambda), std::move(mu));
  const std::size_t k = m.size();
  for (std::size_t i = 0; i < k; ++i) {
    double out_rate = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const CtmnState added = m.states[j] & ~m.states[i];
      if (added != 0 && !can_start(m.states[i], static_cast<std::size_t>(std::countr_zero(added)))) {
        m.generator[i * k + j] = 0.0;
      }
      out_rate += m.generator[i * k + j];
    }
    m.generator[i * k + i] = -out_rate;
  }
  return m;
}

std::vector<double> ctmn_stationary(const CtmnModel& model) {
  const std::size_t k = model.size();
  if (k == 0) throw ContractViolation("empty CTMN");
  // A = Q^T with the last equation replaced by sum(pi) = 1.
  std::vector<double> a(k * k);
  std::vector<double> b(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[j * k + i] = model.generator[i * k + j];
  }
  std::fill(a.begin() + static_cast<std::ptrdiff_t>((k - 1) * k), a.end(), 1.0);
  b[k - 1] = 1.0;

  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(a[r * k + col]) > std::abs(a[pivot * k + col])) pivot = r;
    }
    if (std::abs(a[pivot * k + col]) < 1e-300) throw Error("CTMN generator is singular");
    if (pivot != col) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(col * k),
                       a.begin() + static_cast<std::ptrdiff_t>((col + 1) * k),
                       a.begin() + static_cast<std::ptrdiff_t>(pivot * k));
      std::swap(b[col], b[pivot]);
    }
    const std::span<const double> pivot_row(&a[col * k + col], k - col);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double factor = a[r * k + col] / a[col * k + col];
      if (factor == 0.0) continue;
      simd::axpy(-factor, pivot_row, std::span<double>(&a[r * k + col], k - col));
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> pi(k);
  for (std::size_t i = k; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < k; ++j) acc -= a[i * k + j] * pi[j];
    pi[i] = acc / a[i * k + i];
  }
  const double residual = ctmn_residual(model, pi);
  if (!(residual < 1e-10)) throw Error("CTMN solve residual " + std::to_string(residual) + " too large");
  return pi;
}

double ctmn_residual(const CtmnModel& model, const std::vector<double>& pi) {
  const std::size_t k = model.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += pi[i] * model.generator[i * k + j];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

std::vector<double> ctmn_activity(const CtmnModel& model, const std::vector<double>& pi) {
  std::vector<double> out(model.wlans.size(), 0.0);
  for (std::size_t i = 0; i < model.size(); ++i) {
    for (std::size_t w = 0; w < out.size(); ++w) {
      if ((model.states[i] >> w) & 1u) out[w] += pi[i];
    }
  }
  return out;
}

std::vector<double> ctmn_throughput(const CtmnModel& model, const std::vector<double>& pi,
                                    const std::vector<double>& payload_bits) {
  const auto active = ctmn_activity(model, pi);
  std::vector<double> out(active.size());
  for (std::size_t w = 0; w < out.size(); ++w) out[w] = active[w] * model.mu[w] * payload_bits.at(w);
  return out;
}

std::vector<double> ctmn_scenario_throughput(const io::ScenarioConfig& config) {
  const CtmnModel model = ctmn_model(config);
  const auto wlans = summarize_wlans(config);
  std::vector<double> payload;
  for (const WlanSummary& w : wlans) payload.push_back(static_cast<double>(w.n_agg) * config.params.data_bits);
  return ctmn_throughput(model, ctmn_stationary(model), payload);
}

}  // namespace wlansim::oracles
