#include <doctest.h>

#include <deque>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "wlansim/app/run.hpp"
#include "wlansim/error.hpp"
#include "wlansim/mac/network.hpp"
#include "wlansim/oracles/bianchi.hpp"
#include "wlansim/sim/random.hpp"

using namespace wlansim;
using mac::Mode;
using mac::Network;

namespace {

struct TraceLine {
  std::string time;
  std::string kind;
  std::string node;
  std::string detail;
};

std::vector<TraceLine> parse_trace(const std::string& text) {
  std::vector<TraceLine> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    TraceLine t;
    std::istringstream fields(line);
    std::getline(fields, t.time, ',');
    std::getline(fields, t.kind, ',');
    std::getline(fields, t.node, ',');
    std::getline(fields, t.detail);
    out.push_back(t);
  }
  return out;
}

std::vector<std::string> times_of(const std::vector<TraceLine>& trace, const std::string& kind, const std::string& node,
                                  const std::string& detail_prefix = "") {
  std::vector<std::string> out;
  for (const auto& t : trace) {
    if (t.kind == kind && t.node == node && t.detail.rfind(detail_prefix, 0) == 0) out.push_back(t.time);
  }
  return out;
}

/// Replays scripted backoff draws per node code, then falls back to `fallback`.
struct ScriptedDraws {
  std::map<std::string, std::deque<int>> script;
  int fallback = 15;
  const Network* network = nullptr;

  int operator()(sim::NodeId n, int /*cw*/) {
    auto& q = script[network->node_code(n)];
    if (q.empty()) return fallback;
    const int v = q.front();
    q.pop_front();
    return v;
  }
};

io::ScenarioConfig one_wlan() {
  io::ScenarioConfig cfg;
  cfg.nodes = {test::ap("AP_A", "A", 0, 0), test::sta("STA_A", "A", 2, 0)};
  cfg.mac.fixed_mcs = 8;
  return cfg;
}

io::ScenarioConfig two_overlapping_wlans() {
  io::ScenarioConfig cfg;
  cfg.nodes = {test::ap("AP_A", "A", 0, 0), test::sta("STA_A", "A", 2, 0), test::ap("AP_B", "B", 0, 3),
               test::sta("STA_B", "B", 2, 3)};
  cfg.mac.fixed_mcs = 8;
  return cfg;
}

/// Runs with scripted draws and returns the parsed trace.
std::vector<TraceLine> scripted_run(const io::ScenarioConfig& cfg, std::map<std::string, std::deque<int>> script,
                                    SimTime until) {
  std::ostringstream trace;
  ScriptedDraws draws{std::move(script)};
  mac::RunOptions options;
  options.trace = &trace;
  options.check_invariants = true;
  options.backoff_draw = [&draws](sim::NodeId n, int cw) { return draws(n, cw); };
  Network net(cfg, options);
  draws.network = &net;
  net.run(until);
  return parse_trace(trace.str());
}

std::uint64_t conservation_gap(const std::vector<mac::NodeReport>& nodes) {
  std::uint64_t gap = 0;
  for (const auto& n : nodes) {
    const std::uint64_t rhs = n.delivered + n.dropped + n.buffered;
    gap += n.generated > rhs ? n.generated - rhs : rhs - n.generated;
  }
  return gap;
}

}  // namespace

TEST_SUITE("mac") {
  TEST_CASE("one exchange occupies exactly 420 us") {
    const auto trace = scripted_run(one_wlan(), {{"AP_A", {0}}}, micros(600));
    CHECK(times_of(trace, "frame-start", "AP_A", "RTS").front() == "34.000");
    CHECK(times_of(trace, "frame-start", "STA_A", "CTS").front() == "102.000");
    CHECK(times_of(trace, "frame-start", "AP_A", "DATA").front() == "162.000");
    CHECK(times_of(trace, "frame-end", "STA_A", "BACK").front() == "454.000");
  }

  TEST_CASE("isolated run repeats the exchange after DIFS plus the drawn backoff") {
    const auto trace = scripted_run(one_wlan(), {{"AP_A", {0, 3}}}, micros(1000));
    const auto rts = times_of(trace, "frame-start", "AP_A", "RTS");
    REQUIRE(rts.size() >= 2);
    CHECK(rts[1] == "515.000");  // 454 + 34 + 3 * 9
  }

  TEST_CASE("overheard RTS sets NAV for the rest of the exchange") {
    mac::RunOptions options;
    ScriptedDraws draws{{{"AP_A", {0}}, {"AP_B", {5}}}};
    options.backoff_draw = [&draws](sim::NodeId n, int cw) { return draws(n, cw); };
    Network net(two_overlapping_wlans(), options);
    draws.network = &net;
    net.run(micros(100));
    const auto b = *net.find_node("AP_B");
    CHECK(net.state(b).mode == Mode::kNav);
    CHECK(net.state(b).nav_until == micros(86 + 368));
    CHECK(net.state(*net.find_node("STA_B")).mode == Mode::kNav);
  }

  TEST_CASE("frozen backoff resumes DIFS after the medium clears") {
    const auto trace = scripted_run(two_overlapping_wlans(), {{"AP_A", {0}}, {"AP_B", {5}}}, micros(700));
    CHECK(times_of(trace, "frame-end", "STA_A", "BACK").front() == "454.000");
    CHECK(times_of(trace, "backoff-expiry", "AP_B").front() == "533.000");  // 454 + 34 + 5 * 9
  }

  TEST_CASE("equal backoffs collide and both senders time out") {
    std::ostringstream trace;
    ScriptedDraws draws{{{"AP_A", {0}}, {"AP_B", {0}}}};
    mac::RunOptions options;
    options.trace = &trace;
    options.check_invariants = true;
    options.backoff_draw = [&draws](sim::NodeId n, int cw) { return draws(n, cw); };
    Network net(two_overlapping_wlans(), options);
    draws.network = &net;
    net.run(micros(200));
    const auto lines = parse_trace(trace.str());
    for (const char* code : {"AP_A", "AP_B"}) {
      CAPTURE(code);
      const auto& c = net.state(*net.find_node(code)).counters;
      CHECK(c.attempts == 1);
      CHECK(c.cts_timeouts == 1);
      // RTS end + SIFS + T_CTS + T_e.
      CHECK(times_of(lines, "timeout-expiry", code) == std::vector<std::string>{"155.000"});
      CHECK(net.state(*net.find_node(code)).mode == Mode::kSensing);
    }
    CHECK(times_of(lines, "frame-start", "STA_A").empty());
    CHECK(net.wlan_totals()[0].failed == 1);
  }

  TEST_CASE("hidden terminals lose exchanges that only timeouts reveal") {
    io::ScenarioConfig cfg;
    cfg.nodes = {test::ap("AP_A", "A", 0, 0, -55), test::sta("STA_A", "A", 10, 0, -55),
                 test::ap("AP_B", "B", 20, 0, -55), test::sta("STA_B", "B", 10, 1, -55)};
    mac::RunOptions options;
    options.check_invariants = true;
    Network net(cfg, options);
    CHECK(net.rx_power_dbm(0, 2) < -55.0);
    CHECK(net.rx_power_dbm(0, 1) > -55.0);
    const auto report = net.run(from_seconds(2.0));
    CHECK_FALSE(net.observed_busy(0, 1));
    CHECK_FALSE(net.observed_busy(1, 0));
    const double isolated = oracles::isolated_throughput_bps(cfg.params, net.link_mcs(1), 1);
    for (const char* code : {"AP_A", "AP_B"}) {
      CAPTURE(code);
      const auto& c = net.state(*net.find_node(code)).counters;
      CHECK(c.cts_timeouts + c.ack_timeouts > 0);
      const std::uint64_t closed = c.successes + c.cts_timeouts + c.ack_timeouts;
      CHECK(c.attempts >= closed);
      CHECK(c.attempts - closed <= 1);
    }
    for (const auto& w : report.wlans) CHECK(w.throughput_bps < 0.9 * isolated);
  }

  TEST_CASE("two stations split the downlink evenly") {
    app::RunSpec spec;
    spec.scenario = test::scenario_path("s1_2sta.csv");
    spec.params = test::scenario_path("mcs8.params.csv");
    Network net(app::load_scenario(spec));
    const auto report = net.run(from_seconds(10.0));
    const auto& stations = report.wlans[0].totals.stations;
    REQUIRE(stations.size() == 2);
    const double total = static_cast<double>(stations[0].delivered_mpdus + stations[1].delivered_mpdus);
    CHECK(static_cast<double>(stations[0].delivered_mpdus) / total == doctest::Approx(0.5).epsilon(0.06));
  }

  TEST_CASE("isolated throughput matches the cycle formula") {
    Network net(one_wlan());
    const auto report = net.run(from_seconds(10.0));
    const double expected = oracles::isolated_throughput_bps(phy::PhyMacParams{}, 8, 1);
    CHECK(report.wlans[0].throughput_bps == doctest::Approx(expected).epsilon(0.02));
    CHECK(report.wlans[0].collision_prob == 0.0);
  }

  TEST_CASE("bonding widens frames when the secondaries are free") {
    auto narrow = one_wlan();
    auto wide = one_wlan();
    for (auto& n : wide.nodes) {
      n.max_channel = 3;
      n.dcb_policy = mac::DcbPolicy::kAlwaysMax;
    }
    wide.mac.n_agg = narrow.mac.n_agg = 20;
    const double a = Network(narrow).run(from_seconds(2.0)).wlans[0].throughput_bps;
    const double b = Network(wide).run(from_seconds(2.0)).wlans[0].throughput_bps;
    CHECK(b > 1.5 * a);
  }

  TEST_CASE("static bonding defers while a secondary is busy") {
    io::ScenarioConfig cfg;
    cfg.nodes = {test::ap("AP_A", "A", 0, 0), test::sta("STA_A", "A", 2, 0), test::ap("AP_B", "B", 0, 3),
                 test::sta("STA_B", "B", 2, 3)};
    for (int i : {0, 1}) {
      cfg.nodes[static_cast<std::size_t>(i)].max_channel = 1;
      cfg.nodes[static_cast<std::size_t>(i)].dcb_policy = mac::DcbPolicy::kStatic;
    }
    for (int i : {2, 3}) {
      cfg.nodes[static_cast<std::size_t>(i)].primary_channel = 1;
      cfg.nodes[static_cast<std::size_t>(i)].min_channel = 1;
      cfg.nodes[static_cast<std::size_t>(i)].max_channel = 1;
    }
    cfg.mac.fixed_mcs = 8;
    Network net(cfg, test::options(3, true));
    const auto report = net.run(from_seconds(1.0));
    CHECK(net.state(0).counters.deferrals > 0);
    CHECK(report.wlans[1].throughput_bps > 0.0);
  }

  TEST_CASE("unsaturated traffic conserves every packet") {
    auto cfg = two_overlapping_wlans();
    cfg.nodes[0].traffic = {traffic::TrafficKind::kPoisson, 800.0};
    cfg.nodes[2].traffic = {traffic::TrafficKind::kDeterministic, 5000.0};
    cfg.mac.buffer_capacity = 50;
    cfg.mac.n_agg = 8;
    Network net(cfg, test::options(9, true));
    const auto report = net.run(from_seconds(3.0));
    const auto nodes = net.node_reports();
    CHECK(conservation_gap(nodes) == 0);
    const auto& a = nodes[0];
    CHECK(a.generated == doctest::Approx(2400).epsilon(0.1));
    CHECK(a.dropped == 0);
    CHECK(report.wlans[0].throughput_bps == doctest::Approx(800.0 * 11728).epsilon(0.1));
  }

  TEST_CASE("equal seeds reproduce the trace and other seeds do not") {
    auto traced = [](std::uint64_t seed) {
      std::ostringstream out;
      mac::RunOptions options;
      options.seed = seed;
      options.trace = &out;
      Network net(two_overlapping_wlans(), options);
      net.run(from_seconds(0.05));
      return out.str();
    };
    const std::string a = traced(4);
    CHECK(a == traced(4));
    CHECK(a != traced(5));
    CHECK(a.size() > 1000);
  }

  TEST_CASE("run is single shot") {
    Network net(one_wlan());
    net.run(micros(100));
    CHECK_THROWS_AS(net.run(micros(200)), ContractViolation);
  }

  TEST_CASE("unreachable station is reported at construction") {
    io::ScenarioConfig cfg;
    cfg.nodes = {test::ap("AP_A", "A", 0, 0), test::sta("STA_A", "A", 400, 0)};
    CHECK_THROWS_AS(Network{cfg}, LinkInfeasible);
  }
}

TEST_SUITE("fuzz") {
  TEST_CASE("random deployments never reach an undefined transition") {
    sim::RandomStream rng(20240601);
    std::uint64_t events = 0;
    int scenarios = 0;
    while (events < 1'000'000) {
      auto cfg = test::random_scenario(rng);
      CAPTURE(scenarios);
      const std::uint64_t seed = static_cast<std::uint64_t>(rng.uniform_int(1, 1'000'000));
      try {
        Network net(cfg, test::options(seed, true));
        net.run(from_seconds(1.0));
        events += net.engine().dispatched();
        CHECK(conservation_gap(net.node_reports()) == 0);
        ++scenarios;
      } catch (const ConfigError&) {
        continue;  // geometry drew an unreachable station or co-located nodes
      }
    }
    CHECK(scenarios > 0);
    MESSAGE("fuzzed " << scenarios << " deployments, " << events << " events");
  }
}
