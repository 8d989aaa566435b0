#include "wlansim/mac/network.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <span>
#include <string>

#include "wlansim/error.hpp"
#include "wlansim/mac/dcb.hpp"
#include "wlansim/mac/mac_config.hpp"
#include "wlansim/phy/mcs.hpp"
#include "wlansim/phy/propagation.hpp"
#include "wlansim/simd/kernels.hpp"

namespace wlansim::mac {

using sim::EventKind;
using sim::NodeId;

namespace {

std::string channel_label(const phy::ChannelSet& c) {
  if (c.width() == 1) return std::to_string(c.lowest());
  return std::to_string(c.lowest()) + "-" + std::to_string(c.highest());
}

std::string mode_reason(std::string_view prefix, FrameKind kind) {
  return std::string(prefix) + std::string(to_string(kind));
}

}  // namespace

Network::Network(io::ScenarioConfig config, RunOptions options)
    : config_(std::move(config)), options_(std::move(options)), p_(config_.params) {
  config_.validate();
  const std::size_t n_nodes = config_.nodes.size();

  wlans_ = config_.wlan_codes();
  std::map<std::string, std::size_t> wlan_index;
  for (std::size_t w = 0; w < wlans_.size(); ++w) wlan_index[wlans_[w]] = w;
  wlan_ap_.assign(wlans_.size(), sim::kNoNode);

  nodes_.resize(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const io::NodeConfig& c = config_.nodes[i];
    NodeInfo& info = nodes_[i];
    info.code = c.node_code;
    info.is_ap = c.type == io::NodeType::kAp;
    info.wlan = wlan_index.at(c.wlan_code);
    info.allocation = phy::ChannelSet::range(c.min_channel, c.max_channel, c.primary_channel);
    info.policy = c.dcb_policy;
    info.tx_power_dbm = c.tx_power_dbm;
    info.cca_dbm = c.cca_dbm;
    info.traffic = c.traffic;
    if (info.is_ap) wlan_ap_[info.wlan] = static_cast<NodeId>(i);
  }
  for (std::size_t i = 0; i < n_nodes; ++i) {
    if (nodes_[i].is_ap) continue;
    const NodeId ap = wlan_ap_[nodes_[i].wlan];
    nodes_[i].ap = ap;
    nodes_[ap].stas.push_back(static_cast<NodeId>(i));
  }

  std::map<std::pair<std::string, std::string>, const io::LinkObstacles*> obstacles;
  for (const io::LinkObstacles& o : config_.obstacles) {
    obstacles[std::minmax(o.node_a, o.node_b)] = &o;
  }
  rx_dbm_.assign(n_nodes * n_nodes, phy::kNoPowerDbm);
  rx_mw_.assign(n_nodes * n_nodes, 0.0);
  for (std::size_t a = 0; a < n_nodes; ++a) {
    for (std::size_t b = 0; b < n_nodes; ++b) {
      if (a == b) continue;
      const io::NodeConfig& ca = config_.nodes[a];
      const io::NodeConfig& cb = config_.nodes[b];
      phy::LinkBudget link;
      link.distance_m = std::sqrt((ca.x - cb.x) * (ca.x - cb.x) + (ca.y - cb.y) * (ca.y - cb.y) +
                                  (ca.z - cb.z) * (ca.z - cb.z));
      if (const auto it = obstacles.find(std::minmax(ca.node_code, cb.node_code)); it != obstacles.end()) {
        link.walls = it->second->walls;
        link.floors = it->second->floors;
      }
      const double rx = phy::received_power_dbm(ca.tx_power_dbm, phy::path_loss_db(link, p_), p_);
      rx_dbm_[a * n_nodes + b] = rx;
      rx_mw_[a * n_nodes + b] = phy::dbm_to_mw(rx);
    }
  }

  const mac::MacConfig& mac = config_.mac;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    NodeInfo& sta = nodes_[i];
    if (sta.is_ap) continue;
    const NodeInfo& ap = nodes_[sta.ap];
    const double rx = rx_dbm_[sta.ap * n_nodes + i];
    try {
      // Even with a fixed MCS the link must carry MCS 0 at 20 MHz.
      (void)phy::select_mcs(rx, 1, p_);
      sta.link_mcs = mac.fixed_mcs ? *mac.fixed_mcs : phy::select_mcs(rx, ap.allocation.width(), p_);
    } catch (const LinkInfeasible& e) {
      throw LinkInfeasible("link " + ap.code + " -> " + sta.code + ": " + e.what(), rx);
    }
    const int widest = ap.policy == DcbPolicy::kOnlyPrimary ? 1 : ap.allocation.width();
    try {
      (void)phy::frame_durations(p_, mac.n_agg, sta.link_mcs, widest);
    } catch (const AggregationOverflow& e) {
      throw AggregationOverflow("link " + ap.code + " -> " + sta.code + ": " + e.what(), e.max_feasible());
    }
  }

  states_.resize(n_nodes);
  rngs_.reserve(n_nodes);
  buffers_.resize(n_nodes);
  cca_mw_.resize(n_nodes);
  idle_since_.assign(n_nodes, SimTime{0});
  primary_was_busy_.assign(n_nodes, 0);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    states_[i].cw = p_.contention_window;
    rngs_.push_back(sim::derive_stream(options_.seed, sim::node_stream(static_cast<std::uint32_t>(i))));
    if (nodes_[i].is_ap) buffers_[i].emplace(mac.buffer_capacity);
    cca_mw_[i] = phy::dbm_to_mw(nodes_[i].cca_dbm);
    used_channels_ |= nodes_[i].allocation.mask;
  }
  for (int c = 0; c < phy::kMaxChannels; ++c) {
    chan_power_mw_[static_cast<std::size_t>(c)].assign(n_nodes, 0.0);
    busy_[static_cast<std::size_t>(c)].assign(n_nodes, 0);
  }

  totals_.resize(wlans_.size());
  for (std::size_t w = 0; w < wlans_.size(); ++w) {
    totals_[w].wlan_code = wlans_[w];
    for (NodeId sta : nodes_[wlan_ap_[w]].stas) totals_[w].stations.push_back({nodes_[sta].code, 0, 0});
  }
  last_frame_end_.assign(wlans_.size(), SimTime{0});
  seen_busy_.assign(wlans_.size() * wlans_.size(), 0);
  seen_free_.assign(wlans_.size() * wlans_.size(), 0);
}

std::optional<NodeId> Network::find_node(std::string_view code) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].code == code) return static_cast<NodeId>(i);
  }
  return std::nullopt;
}

bool Network::observed_busy(std::size_t a, std::size_t b) const { return seen_busy_[a * wlans_.size() + b] != 0; }

bool Network::observed(std::size_t a, std::size_t b) const {
  const std::size_t ab = a * wlans_.size() + b;
  const std::size_t ba = b * wlans_.size() + a;
  return seen_busy_[ab] || seen_free_[ab] || seen_busy_[ba] || seen_free_[ba];
}

std::vector<NodeReport> Network::node_reports() const {
  std::vector<NodeReport> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    NodeReport r;
    r.node_code = nodes_[i].code;
    r.wlan_code = wlans_[nodes_[i].wlan];
    r.is_ap = nodes_[i].is_ap;
    if (const auto& b = buffers_[i]) {
      r.generated = b->generated();
      r.delivered = b->delivered();
      r.dropped = b->dropped();
      r.buffered = static_cast<std::uint64_t>(b->size());
    }
    r.counters = states_[i].counters;
    out.push_back(std::move(r));
  }
  return out;
}

io::StatsReport Network::run(SimTime sim_time) {
  if (ran_) throw ContractViolation("Network::run called twice");
  if (sim_time <= SimTime{0}) throw ConfigError("simulation time must be positive");
  ran_ = true;
  const auto wall_start = std::chrono::steady_clock::now();

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!nodes_[i].is_ap) continue;
    const auto n = static_cast<NodeId>(i);
    if (nodes_[i].traffic.kind == traffic::TrafficKind::kFullBuffer) {
      buffers_[i]->refill(engine_.now(), p_.data_bits);
    } else if (const auto t = traffic::next_arrival(nodes_[i].traffic, rngs_[i], engine_.now())) {
      engine_.schedule(*t, EventKind::kTrafficArrival, n);
    }
    enter_sensing(n, "start");
  }
  engine_.schedule(sim_time, EventKind::kSimEnd, sim::kNoNode);
  engine_.run_until(sim_time, [this](const sim::Event& ev) { dispatch(ev); });

  io::StatsReport report = io::finalize_stats(totals_, to_seconds(sim_time));
  report.events_dispatched = engine_.dispatched();
  report.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return report;
}

void Network::dispatch(const sim::Event& ev) {
  if (options_.trace != nullptr) write_trace(ev);
  switch (ev.kind) {
    case EventKind::kFrameStart: on_frame_start(ev.payload); break;
    case EventKind::kFrameEnd: on_frame_end(ev.payload); break;
    case EventKind::kBackoffExpiry: on_backoff_expiry(ev.origin); break;
    case EventKind::kTimeoutExpiry: on_timeout(ev.origin); break;
    case EventKind::kNavExpiry: on_nav_expiry(ev.origin); break;
    case EventKind::kTrafficArrival: on_traffic_arrival(ev.origin); break;
    case EventKind::kSimEnd: break;
  }
  if (options_.check_invariants) check_invariants();
}

void Network::write_trace(const sim::Event& ev) {
  std::ostream& out = *options_.trace;
  out << format_micros(ev.fire_time) << ',' << to_string(ev.kind) << ','
      << (ev.origin == sim::kNoNode ? std::string("-") : nodes_[ev.origin].code) << ',';
  switch (ev.kind) {
    case EventKind::kFrameStart:
    case EventKind::kFrameEnd: {
      const Notification& f = frames_.at(ev.payload);
      out << to_string(f.kind) << " to=" << nodes_[f.rx].code << " ch=" << channel_label(f.channels)
          << " dur=" << format_micros(f.duration) << " nagg=" << f.n_agg;
      break;
    }
    case EventKind::kTimeoutExpiry:
      out << to_string(states_[ev.origin].timeout_kind);
      break;
    case EventKind::kBackoffExpiry:
      out << "cw=" << states_[ev.origin].cw;
      break;
    case EventKind::kTrafficArrival:
      out << "queued=" << buffers_[ev.origin]->size();
      break;
    case EventKind::kNavExpiry:
    case EventKind::kSimEnd:
      break;
  }
  out << '\n';
}

// ---------------------------------------------------------------------------
// Medium

void Network::on_frame_start(std::uint64_t frame_id) {
  Notification& f = frames_.at(frame_id);
  f.start = engine_.now();
  active_.push_back(frame_id);
  const std::size_t n_nodes = nodes_.size();
  const std::span<const double> row(&rx_mw_[f.tx * n_nodes], n_nodes);
  for (int c : f.channels.channels()) simd::accumulate(chan_power_mw_[static_cast<std::size_t>(c)], row);

  NodeState& tx = states_[f.tx];
  ++tx.counters.frames_sent;
  if (f.kind == FrameKind::kRts) {
    ++tx.counters.attempts;
    ++totals_[nodes_[f.tx].wlan].attempts;
  }
  for (std::size_t i = 0; i < n_nodes; ++i) {
    if (i != f.tx) receiver_frame_start(static_cast<NodeId>(i), f);
  }
  engine_.schedule(f.start + f.duration, EventKind::kFrameEnd, f.tx, frame_id);
  refresh_cca();
  if (f.kind == FrameKind::kRts && active_.size() == 1) record_contention(f);
}

void Network::on_frame_end(std::uint64_t frame_id) {
  const Notification f = frames_.at(frame_id);
  active_.erase(std::find(active_.begin(), active_.end(), frame_id));
  for (int c : f.channels.channels()) rebuild_channel(c);
  last_frame_end_[nodes_[f.tx].wlan] = engine_.now();
  idle_since_[f.tx] = engine_.now();  // its own frame kept the medium busy for the sender

  own_frame_end(f);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i != f.tx && states_[i].rx.frame == frame_id) finish_reception(static_cast<NodeId>(i), f);
  }
  refresh_cca();
  frames_.erase(frame_id);
}

void Network::rebuild_channel(int channel) {
  auto& power = chan_power_mw_[static_cast<std::size_t>(channel)];
  std::fill(power.begin(), power.end(), 0.0);
  const std::size_t n_nodes = nodes_.size();
  for (std::uint64_t id : active_) {
    const Notification& g = frames_.at(id);
    if (g.channels.contains(channel)) {
      simd::accumulate(power, std::span<const double>(&rx_mw_[g.tx * n_nodes], n_nodes));
    }
  }
}

void Network::refresh_cca() {
  const std::size_t n_nodes = nodes_.size();
  for (std::size_t i = 0; i < n_nodes; ++i) {
    primary_was_busy_[i] = busy_[static_cast<std::size_t>(nodes_[i].allocation.primary)][i];
  }
  for (int c = 0; c < phy::kMaxChannels; ++c) {
    if (((used_channels_ >> c) & 1u) == 0) continue;
    const auto idx = static_cast<std::size_t>(c);
    simd::threshold_mask(chan_power_mw_[idx], cca_mw_, busy_[idx]);
  }
  const SimTime now = engine_.now();
  for (std::size_t i = 0; i < n_nodes; ++i) {
    if (primary_was_busy_[i] && !busy_[static_cast<std::size_t>(nodes_[i].allocation.primary)][i]) {
      idle_since_[i] = now;
    }
  }
  for (std::size_t i = 0; i < n_nodes; ++i) evaluate_channel(static_cast<NodeId>(i));
}

void Network::record_contention(const Notification& f) {
  const std::size_t w = nodes_[f.tx].wlan;
  const std::size_t n_wlans = wlans_.size();
  for (std::size_t v = 0; v < n_wlans; ++v) {
    if (v == w) continue;
    const NodeId ap = wlan_ap_[v];
    const auto primary = static_cast<std::size_t>(nodes_[ap].allocation.primary);
    if (busy_[primary][ap]) {
      seen_busy_[w * n_wlans + v] = 1;
    } else {
      seen_free_[w * n_wlans + v] = 1;
    }
  }
}

double Network::capture_threshold(int mcs) const { return mac::capture_threshold_db(mcs, p_, config_.mac); }

double Network::sinr_at(NodeId n, const Notification& f) const {
  const std::size_t n_nodes = nodes_.size();
  double worst_mw = 0.0;
  for (int c : f.channels.channels()) {
    double sum = 0.0;
    for (std::uint64_t id : active_) {
      if (id == f.id) continue;
      const Notification& g = frames_.at(id);
      if (g.tx != n && g.channels.contains(c)) sum += rx_mw_[g.tx * n_nodes + n];
    }
    worst_mw = std::max(worst_mw, sum);
  }
  return phy::sinr_db(rx_dbm_[f.tx * n_nodes + n], phy::mw_to_dbm(worst_mw), p_);
}

bool Network::decodable(NodeId n, const Notification& f) const {
  return f.channels.contains(nodes_[n].allocation.primary) && sinr_at(n, f) >= capture_threshold(f.mcs);
}

// ---------------------------------------------------------------------------
// Receivers

void Network::receiver_frame_start(NodeId n, const Notification& f) {
  NodeState& s = states_[n];
  if (s.mode == Mode::kTransmit) return;  // receiver blocked while transmitting

  if (s.rx.active()) {
    if (s.rx.ok) {
      const Notification& current = frames_.at(s.rx.frame);
      if (sinr_at(n, current) < capture_threshold(current.mcs)) {
        s.rx.ok = false;
        ++s.counters.rx_discarded;
      }
    }
    return;
  }

  const std::size_t n_nodes = nodes_.size();
  if (f.rx == n) {
    const bool from_peer = f.tx == s.exchange.peer;
    const bool awaited = (f.kind == FrameKind::kRts && s.mode == Mode::kSensing) ||
                         (from_peer && f.kind == FrameKind::kCts && s.mode == Mode::kWaitCts) ||
                         (from_peer && f.kind == FrameKind::kData && s.mode == Mode::kWaitData) ||
                         (from_peer && f.kind == FrameKind::kBack && s.mode == Mode::kWaitAck);
    if (!awaited || !decodable(n, f)) return;
    s.rx = Reception{f.id, true, true, rx_dbm_[f.tx * n_nodes + n]};
    s.resume_mode = s.mode;
    if (s.mode == Mode::kWaitData) cancel_timeout(n);
    set_mode(n, Mode::kReceive, mode_reason("rx-", f.kind));
    return;
  }

  // Overhearing: only reservations are of interest, and only when the frame
  // is strong enough to register on this node's energy detector.
  const bool reservation = f.kind == FrameKind::kRts || f.kind == FrameKind::kCts;
  if (reservation && (s.mode == Mode::kSensing || s.mode == Mode::kNav) &&
      rx_mw_[f.tx * n_nodes + n] >= cca_mw_[n] && decodable(n, f)) {
    s.rx = Reception{f.id, false, true, rx_dbm_[f.tx * n_nodes + n]};
  }
}

void Network::finish_reception(NodeId n, const Notification& f) {
  NodeState& s = states_[n];
  const Reception r = s.rx;
  s.rx = Reception{};
  const SimTime now = engine_.now();

  if (!r.addressed) {
    if (r.ok && (s.mode == Mode::kSensing || s.mode == Mode::kNav)) nav_update(n, now + f.nav);
    return;
  }
  if (s.mode != Mode::kReceive) {
    throw ContractViolation("node " + nodes_[n].code + " finished an addressed reception in mode " +
                            std::string(to_string(s.mode)));
  }
  if (!r.ok) {
    if (s.resume_mode == Mode::kWaitCts || s.resume_mode == Mode::kWaitAck) {
      set_mode(n, s.resume_mode, mode_reason("lost-", f.kind));
    } else {
      enter_sensing(n, mode_reason("lost-", f.kind));
    }
    return;
  }

  switch (f.kind) {
    case FrameKind::kRts: {
      const int width = f.channels.width();
      s.exchange = Exchange{f.tx, f.channels, f.mcs, f.n_agg, phy::frame_durations(p_, f.n_agg, f.mcs, width), now};
      send(n, f.tx, FrameKind::kCts, now + p_.sifs);
      break;
    }
    case FrameKind::kCts:
      cancel_timeout(n);
      send(n, f.tx, FrameKind::kData, now + p_.sifs);
      break;
    case FrameKind::kData:
      send(n, f.tx, FrameKind::kBack, now + p_.sifs);
      break;
    case FrameKind::kBack:
      cancel_timeout(n);
      finish_exchange(n, true);
      break;
  }
}

void Network::own_frame_end(const Notification& f) {
  const NodeId n = f.tx;
  if (states_[n].mode != Mode::kTransmit) {
    throw ContractViolation("node " + nodes_[n].code + " ended a frame outside TRANSMIT");
  }
  switch (f.kind) {
    case FrameKind::kRts:
      set_mode(n, Mode::kWaitCts, "rts-sent");
      arm_timeout(n, TimeoutKind::kCts, p_.sifs + states_[n].exchange.durations.cts + p_.empty_slot);
      break;
    case FrameKind::kCts:
      set_mode(n, Mode::kWaitData, "cts-sent");
      arm_timeout(n, TimeoutKind::kData, p_.sifs + p_.he_su_preamble + p_.empty_slot);
      break;
    case FrameKind::kData:
      set_mode(n, Mode::kWaitAck, "data-sent");
      arm_timeout(n, TimeoutKind::kAck, p_.sifs + p_.block_ack + p_.empty_slot);
      break;
    case FrameKind::kBack:
      enter_sensing(n, "back-sent");
      break;
  }
}

void Network::send(NodeId tx, NodeId rx, FrameKind kind, SimTime at) {
  NodeState& s = states_[tx];
  s.rx = Reception{};  // transmitting blocks the receiver
  set_mode(tx, Mode::kTransmit, mode_reason("send-", kind));

  Notification f;
  f.id = next_frame_id_++;
  f.tx = tx;
  f.rx = rx;
  f.kind = kind;
  f.channels = s.exchange.channels;
  f.tx_power_dbm = nodes_[tx].tx_power_dbm;
  f.mcs = s.exchange.mcs;
  f.n_agg = s.exchange.n_agg;
  const phy::FrameDurations& d = s.exchange.durations;
  switch (kind) {
    case FrameKind::kRts:
      f.duration = d.rts;
      f.nav = phy::rts_nav(p_, d);
      break;
    case FrameKind::kCts:
      f.duration = d.cts;
      f.nav = phy::cts_nav(p_, d);
      break;
    case FrameKind::kData: f.duration = d.data; break;
    case FrameKind::kBack: f.duration = p_.block_ack; break;
  }
  frames_.emplace(f.id, f);
  engine_.schedule(at, EventKind::kFrameStart, tx, f.id);
}

// ---------------------------------------------------------------------------
// Access procedure

void Network::set_mode(NodeId n, Mode to, std::string_view reason) {
  NodeState& s = states_[n];
  const Mode from = s.mode;
  if (from == to) return;
  if (from == Mode::kSensing) suspend_backoff(n);
  s.mode = to;
  ++s.counters.transitions;
  if (options_.node_log) {
    std::string line = format_micros(engine_.now());
    line += ' ';
    line += nodes_[n].code;
    line += ' ';
    line += to_string(from);
    line += "->";
    line += to_string(to);
    line += ' ';
    line += reason;
    options_.node_log(nodes_[n].code, line);
  }
}

bool Network::has_traffic(NodeId n) const { return buffers_[n] && !buffers_[n]->empty(); }

void Network::enter_sensing(NodeId n, std::string_view reason) {
  if (states_[n].nav_until > engine_.now()) {
    set_mode(n, Mode::kNav, reason);
    return;
  }
  set_mode(n, Mode::kSensing, reason);
  ensure_backoff(n);
  evaluate_channel(n);
}

void Network::draw_new_backoff(NodeId n) {
  NodeState& s = states_[n];
  const int slots = options_.backoff_draw ? options_.backoff_draw(n, s.cw) : draw_backoff(rngs_[n], s.cw);
  if (slots < 0) throw ContractViolation("negative backoff draw");
  s.backoff_remaining = slots * p_.empty_slot;
  s.phase = BackoffPhase::kFrozen;
}

void Network::ensure_backoff(NodeId n) {
  if (!nodes_[n].is_ap) return;
  NodeState& s = states_[n];
  if (s.phase == BackoffPhase::kNone && has_traffic(n)) {
    draw_new_backoff(n);
  } else if (s.phase == BackoffPhase::kSuspended) {
    s.phase = BackoffPhase::kFrozen;
  }
}

void Network::evaluate_channel(NodeId n) {
  NodeState& s = states_[n];
  if (!nodes_[n].is_ap || s.mode != Mode::kSensing) return;
  const auto primary = static_cast<std::size_t>(nodes_[n].allocation.primary);
  const bool busy = busy_[primary][n] != 0;
  const SimTime now = engine_.now();
  if (s.phase == BackoffPhase::kCounting && busy) {
    s.backoff_remaining -= std::max(Duration{0}, now - s.countdown_from);
    engine_.cancel(s.backoff_event);
    s.phase = BackoffPhase::kFrozen;
  } else if (s.phase == BackoffPhase::kFrozen && !busy) {
    // Slot boundaries follow the medium: DIFS after the primary went idle,
    // then every T_e. A node joining late starts at the next boundary.
    const SimTime grid = idle_since_[n] + p_.difs;
    s.countdown_from = grid;
    if (now > grid) {
      const auto slots = (now - grid + p_.empty_slot - Duration{1}) / p_.empty_slot;
      s.countdown_from = grid + slots * p_.empty_slot;
    }
    s.backoff_event = engine_.schedule(s.countdown_from + s.backoff_remaining, EventKind::kBackoffExpiry, n);
    s.phase = BackoffPhase::kCounting;
  }
}

void Network::suspend_backoff(NodeId n) {
  NodeState& s = states_[n];
  if (s.phase == BackoffPhase::kCounting) {
    s.backoff_remaining -= std::max(Duration{0}, engine_.now() - s.countdown_from);
    if (s.backoff_remaining < Duration{0}) s.backoff_remaining = Duration{0};
    engine_.cancel(s.backoff_event);
    s.phase = BackoffPhase::kSuspended;
  } else if (s.phase == BackoffPhase::kFrozen) {
    s.phase = BackoffPhase::kSuspended;
  }
}

void Network::on_backoff_expiry(NodeId n) {
  NodeState& s = states_[n];
  if (s.mode != Mode::kSensing || s.phase != BackoffPhase::kCounting) {
    throw ContractViolation("backoff expired at " + nodes_[n].code + " in mode " + std::string(to_string(s.mode)));
  }
  s.phase = BackoffPhase::kNone;
  s.backoff_remaining = Duration{0};
  if (!has_traffic(n)) throw ContractViolation("backoff expired at " + nodes_[n].code + " with an empty buffer");

  const NodeInfo& info = nodes_[n];
  std::uint8_t free_mask = 0;
  for (int c : info.allocation.channels()) {
    if (!busy_[static_cast<std::size_t>(c)][n]) free_mask |= static_cast<std::uint8_t>(1u << c);
  }
  const auto channels = dcb_select_channels(info.policy, free_mask, info.allocation, rngs_[n]);
  if (!channels) {
    ++s.counters.deferrals;
    draw_new_backoff(n);
    evaluate_channel(n);
    return;
  }

  const NodeId dest =
      info.stas.size() == 1
          ? info.stas.front()
          : info.stas[static_cast<std::size_t>(rngs_[n].uniform_int(0, static_cast<std::int64_t>(info.stas.size()) - 1))];
  const int mcs = nodes_[dest].link_mcs;
  const int width = channels->width();
  const int n_agg = traffic::dequeue_aggregate(*buffers_[n], config_.mac.n_agg, mcs, width, p_);
  s.exchange = Exchange{dest, *channels, mcs, n_agg, phy::frame_durations(p_, n_agg, mcs, width), engine_.now()};
  send(n, dest, FrameKind::kRts, engine_.now());
}

void Network::arm_timeout(NodeId n, TimeoutKind kind, Duration after) {
  NodeState& s = states_[n];
  s.timeout_kind = kind;
  s.timeout_event =
      engine_.schedule(engine_.now() + after, EventKind::kTimeoutExpiry, n, static_cast<std::uint64_t>(kind));
}

void Network::cancel_timeout(NodeId n) { engine_.cancel(states_[n].timeout_event); }

void Network::on_timeout(NodeId n) {
  NodeState& s = states_[n];
  s.timeout_event = sim::EventHandle{};
  if (s.mode != wait_mode(s.timeout_kind)) {
    throw ContractViolation(std::string(to_string(s.timeout_kind)) + " timeout at " + nodes_[n].code + " in mode " +
                            std::string(to_string(s.mode)));
  }
  switch (s.timeout_kind) {
    case TimeoutKind::kCts:
      ++s.counters.cts_timeouts;
      ++totals_[nodes_[n].wlan].failed;
      finish_exchange(n, false);
      break;
    case TimeoutKind::kAck:
      ++s.counters.ack_timeouts;
      ++totals_[nodes_[n].wlan].ack_timeouts;
      finish_exchange(n, false);
      break;
    case TimeoutKind::kData:
      ++s.counters.data_timeouts;
      enter_sensing(n, "data-timeout");
      break;
  }
}

void Network::finish_exchange(NodeId ap, bool success) {
  NodeState& s = states_[ap];
  const std::size_t w = nodes_[ap].wlan;
  io::WlanTotals& t = totals_[w];
  const SimTime now = engine_.now();
  t.airtime += last_frame_end_[w] - s.exchange.started;
  if (success) {
    traffic::Buffer& buffer = *buffers_[ap];
    const traffic::Delivery d = buffer.commit(s.exchange.n_agg, now);
    t.delivered_mpdus += static_cast<std::uint64_t>(d.mpdus);
    t.acked_bits += d.bits;
    t.delay_sum_s += d.delay_sum_s;
    const auto& stas = nodes_[ap].stas;
    const auto slot = static_cast<std::size_t>(std::find(stas.begin(), stas.end(), s.exchange.peer) - stas.begin());
    t.stations[slot].delivered_mpdus += static_cast<std::uint64_t>(d.mpdus);
    t.stations[slot].acked_bits += d.bits;
    ++s.counters.successes;
    s.cw = p_.contention_window;
    if (nodes_[ap].traffic.kind == traffic::TrafficKind::kFullBuffer) buffer.refill(now, p_.data_bits);
  } else {
    s.cw = next_contention_window(s.cw, p_.contention_window, config_.mac.cw_stages);
  }
  if (options_.agent != nullptr) options_.agent->on_exchange_end(ap, success, now);
  enter_sensing(ap, success ? "back-received" : "timeout");
}

void Network::nav_update(NodeId n, SimTime until) {
  NodeState& s = states_[n];
  if (until <= s.nav_until) return;
  s.nav_until = until;
  engine_.cancel(s.nav_event);
  s.nav_event = engine_.schedule(until, EventKind::kNavExpiry, n);
  ++s.counters.nav_updates;
  if (s.mode == Mode::kSensing) set_mode(n, Mode::kNav, "nav-set");
}

void Network::on_nav_expiry(NodeId n) {
  NodeState& s = states_[n];
  s.nav_event = sim::EventHandle{};
  if (s.mode != Mode::kNav) {
    throw ContractViolation("NAV expired at " + nodes_[n].code + " in mode " + std::string(to_string(s.mode)));
  }
  enter_sensing(n, "nav-expired");
}

void Network::on_traffic_arrival(NodeId n) {
  traffic::Buffer& buffer = *buffers_[n];
  buffer.enqueue(traffic::Mpdu{engine_.now(), p_.data_bits});
  if (const auto t = traffic::next_arrival(nodes_[n].traffic, rngs_[n], engine_.now())) {
    engine_.schedule(*t, EventKind::kTrafficArrival, n);
  }
  if (states_[n].mode == Mode::kSensing) {
    ensure_backoff(n);
    evaluate_channel(n);
  }
}

void Network::check_invariants() const {
  const SimTime now = engine_.now();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const NodeState& s = states_[i];
    auto fail = [&](const std::string& what) {
      throw ContractViolation("invariant violated at " + nodes_[i].code + " (" + format_micros(now) + " us): " + what);
    };
    if (s.mode == Mode::kTransmit && s.rx.active()) fail("receiving while transmitting");
    if ((s.phase == BackoffPhase::kCounting || s.phase == BackoffPhase::kFrozen) && s.mode != Mode::kSensing) {
      fail("backoff running outside SENSING");
    }
    if (s.backoff_remaining < Duration{0}) fail("negative backoff");
    if (s.nav_until > now && s.mode != Mode::kNav) fail("NAV pending outside NAV mode");
    if (s.mode == Mode::kNav && s.nav_until < now) fail("NAV mode past NAV expiry");
    if (const auto& b = buffers_[i]) {
      if (b->generated() != b->delivered() + b->dropped() + static_cast<std::uint64_t>(b->size())) {
        fail("MPDU conservation");
      }
      if (nodes_[i].traffic.kind == traffic::TrafficKind::kFullBuffer && b->empty()) fail("saturated buffer empty");
    }
  }
}

}  // namespace wlansim::mac
