#include "wlansim/oracles/bianchi.hpp"

#include <cmath>
#include <string>

#include "wlansim/error.hpp"
#include "wlansim/phy/frames.hpp"

namespace wlansim::oracles {

namespace {

double tau_of(double p, double window, int stages) {
  if (stages == 0) return 2.0 / (window + 1.0);
  const double two_p = 2.0 * p;
  // Numerator and denominator both vanish at p = 1/2; take the limit there.
  if (std::abs(1.0 - two_p) < 1e-12) return 2.0 / (window + 1.0 + window * stages * 0.5);
  const double num = 2.0 * (1.0 - two_p);
  const double den = (1.0 - two_p) * (window + 1.0) + p * window * (1.0 - std::pow(two_p, stages));
  return num / den;
}

}  // namespace

BianchiFixedPoint bianchi_fixed_point(int n, int cw, int stages) {
  if (n < 1) throw ContractViolation("Bianchi model needs n >= 1");
  if (cw < 0) throw ContractViolation("contention window must be >= 0");
  if (stages < 0) throw ContractViolation("backoff stages must be >= 0");
  const double window = cw + 1.0;
  BianchiFixedPoint out;
  if (stages == 0) {
    out.tau = 2.0 / (window + 1.0);
    out.p = 1.0 - std::pow(1.0 - out.tau, n - 1);
    return out;
  }
  double p = 0.0;
  constexpr double kDamping = 0.5;
  for (int it = 1; it <= 10000; ++it) {
    const double tau = tau_of(p, window, stages);
    const double next = 1.0 - std::pow(1.0 - tau, n - 1);
    const double residual = std::abs(next - p);
    p = (1.0 - kDamping) * p + kDamping * next;
    if (residual < 1e-12) {
      out.tau = tau_of(p, window, stages);
      out.p = 1.0 - std::pow(1.0 - out.tau, n - 1);
      out.iterations = it;
      return out;
    }
  }
  throw Error("Bianchi fixed point did not converge for n=" + std::to_string(n));
}

BianchiResult bianchi_throughput(int n, const phy::PhyMacParams& p, int mcs, int n_agg, int stages) {
  const BianchiFixedPoint fp = bianchi_fixed_point(n, p.contention_window, stages);
  const phy::FrameDurations d = phy::frame_durations(p, n_agg, mcs, 1);
  const double slot = to_seconds(p.empty_slot);
  const double t_s = to_seconds(phy::exchange_airtime(p, d) + p.difs);
  const double t_c = to_seconds(d.rts + p.difs);

  const double p_tr = 1.0 - std::pow(1.0 - fp.tau, n);
  const double p_s = n * fp.tau * std::pow(1.0 - fp.tau, n - 1) / p_tr;
  const double payload = static_cast<double>(n_agg) * p.data_bits;
  const double cycle = (1.0 - p_tr) * slot + p_tr * p_s * t_s + p_tr * (1.0 - p_s) * t_c;

  BianchiResult r;
  r.tau = fp.tau;
  r.p = fp.p;
  r.collision_prob = fp.p;
  r.aggregate_throughput_bps = p_s * p_tr * payload / cycle;
  r.per_wlan_throughput_bps = r.aggregate_throughput_bps / n;
  return r;
}

double isolated_throughput_bps(const phy::PhyMacParams& p, int mcs, int n_agg, int width_channels) {
  const phy::FrameDurations d = phy::frame_durations(p, n_agg, mcs, width_channels);
  const double mean_backoff = 0.5 * p.contention_window * to_seconds(p.empty_slot);
  const double cycle = mean_backoff + to_seconds(p.difs + phy::exchange_airtime(p, d));
  return static_cast<double>(n_agg) * p.data_bits / cycle;
}

}  // namespace wlansim::oracles
