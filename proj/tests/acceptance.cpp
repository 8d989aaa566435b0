// Acceptance report: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes, except criteria named with
// --known-gap, whose FAIL lines are still printed but do not fail the run.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "wlansim/app/generate.hpp"
#include "wlansim/app/run.hpp"
#include "wlansim/app/sweep.hpp"
#include "wlansim/error.hpp"
#include "wlansim/mac/network.hpp"
#include "wlansim/oracles/bianchi.hpp"
#include "wlansim/oracles/ctmn.hpp"
#include "wlansim/sim/engine.hpp"

using namespace wlansim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

struct Context {
  fs::path work;
  std::vector<std::uint64_t> sweep_seeds;
  std::vector<app::SweepPoint> sweep;  // filled by criterion 7
  std::uint64_t conservation_gap = 0;  // accumulated over every run
  std::size_t runs = 0;
};

std::string mbps(double bps) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << bps / 1e6;
  return s.str();
}

double rel(double a, double b) { return (a - b) / b; }

io::ScenarioConfig load(const std::string& scenario, const std::string& params) {
  app::RunSpec spec;
  spec.scenario = test::scenario_path(scenario);
  spec.params = test::scenario_path(params);
  return app::load_scenario(spec);
}

struct Run {
  io::StatsReport report;
  double wall_s = 0.0;
};

/// Runs a scenario, folds its packet accounting into the context.
Run simulate(Context& ctx, const io::ScenarioConfig& cfg, double seconds, std::uint64_t seed,
             mac::Network** keep = nullptr) {
  static std::vector<std::unique_ptr<mac::Network>> kept;
  auto net = std::make_unique<mac::Network>(cfg, test::options(seed));
  const auto t0 = std::chrono::steady_clock::now();
  Run r;
  r.report = net->run(from_seconds(seconds));
  r.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& n : net->node_reports()) {
    const std::uint64_t rhs = n.delivered + n.dropped + n.buffered;
    ctx.conservation_gap += n.generated > rhs ? n.generated - rhs : rhs - n.generated;
  }
  ++ctx.runs;
  if (keep) {
    *keep = net.get();
    kept.push_back(std::move(net));
  }
  return r;
}

double isolated_mcs8(int n_agg) { return oracles::isolated_throughput_bps(phy::PhyMacParams{}, 8, n_agg); }

void criterion1(Context& ctx, Outcome& o) {
  for (int n_agg : {1, 40}) {
    const auto cfg = load("s1_1sta.csv", n_agg == 1 ? "mcs8.params.csv" : "mcs8_agg40.params.csv");
    const double expected = isolated_mcs8(n_agg);
    double sum = 0.0;
    double slowest = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Run r = simulate(ctx, cfg, 60.0, seed);
      sum += r.report.wlans[0].throughput_bps;
      slowest = std::max(slowest, r.wall_s);
    }
    const double mean = sum / 5.0;
    o.detail << " n_agg=" << n_agg << ": " << mbps(mean) << " vs " << mbps(expected) << " Mbps (" << std::showpos
             << std::setprecision(2) << 100.0 * rel(mean, expected) << std::noshowpos << "%), slowest run "
             << std::setprecision(2) << slowest << " s;";
    o.require(std::abs(rel(mean, expected)) <= 0.02, "throughput outside 2%");
    o.require(slowest < 10.0, "run slower than 10 s");
  }
}

void criterion2(Context& ctx, Outcome& o) {
  const Run one = simulate(ctx, load("s1_1sta.csv", "mcs8.params.csv"), 60.0, 1);
  const Run two = simulate(ctx, load("s1_2sta.csv", "mcs8.params.csv"), 60.0, 1);
  const double a = one.report.wlans[0].throughput_bps;
  const double b = two.report.wlans[0].throughput_bps;
  const auto& st = two.report.wlans[0].totals.stations;
  const double total = static_cast<double>(st.at(0).delivered_mpdus + st.at(1).delivered_mpdus);
  const double share = static_cast<double>(st.at(0).delivered_mpdus) / total;
  o.detail << " aggregate " << mbps(b) << " vs 1-STA " << mbps(a) << " Mbps; split " << std::setprecision(4) << share
           << "/" << 1.0 - share;
  o.require(std::abs(rel(b, a)) <= 0.02, "aggregate outside 2%");
  o.require(std::abs(share - 0.5) <= 0.02, "split outside 50/50 +- 2%");
}

void criterion3(Context& ctx, Outcome& o) {
  const auto cfg = load("2b.csv", "toy.params.csv");
  mac::Network* net = nullptr;
  const Run r = simulate(ctx, cfg, 60.0, 1, &net);
  const auto ctmn = oracles::ctmn_scenario_throughput(cfg);
  auto edge = [&](std::size_t a, std::size_t b) { return net->observed_busy(a, b) || net->observed_busy(b, a); };
  const bool graph_ok = edge(0, 1) && edge(1, 2) && !edge(0, 2) && net->observed(0, 2);
  o.detail << " realized graph " << (graph_ok ? "A-B, B-C" : "unexpected") << ";";
  o.require(graph_ok, "realized contention graph is not exactly A-B, B-C");
  for (std::size_t w : {0u, 2u}) {
    const double sim = r.report.wlans[w].throughput_bps;
    o.detail << " " << r.report.wlans[w].wlan_code << " " << mbps(sim) << " vs CTMN " << mbps(ctmn[w]) << ";";
    o.require(std::abs(rel(sim, ctmn[w])) <= 0.10, r.report.wlans[w].wlan_code + " outside 10% of CTMN");
  }
  const double ratio = r.report.wlans[1].throughput_bps / r.report.wlans[0].throughput_bps;
  o.detail << " B/A " << std::setprecision(3) << ratio;
  o.require(ratio < 0.15, "B not starved");
}

void criterion4(Context& ctx, Outcome& o) {
  const Run r = simulate(ctx, load("2d.csv", "toy.params.csv"), 60.0, 1);
  const double iso = isolated_mcs8(1);
  for (const auto& w : r.report.wlans) {
    o.detail << " " << w.wlan_code << " " << mbps(w.throughput_bps);
    o.require(std::abs(rel(w.throughput_bps, iso)) <= 0.03, w.wlan_code + " outside 3% of isolated");
  }
  o.detail << " (isolated " << mbps(iso) << ")";
}

void criterion5(Context& ctx, Outcome& o) {
  const Run r = simulate(ctx, load("2a.csv", "toy.params.csv"), 60.0, 1);
  double lo = 1e300;
  double hi = 0.0;
  double sum = 0.0;
  for (const auto& w : r.report.wlans) {
    lo = std::min(lo, w.throughput_bps);
    hi = std::max(hi, w.throughput_bps);
    sum += w.throughput_bps;
    o.detail << " " << w.wlan_code << " " << mbps(w.throughput_bps);
  }
  const double iso = isolated_mcs8(1);
  o.detail << "; sum " << mbps(sum) << " vs isolated " << mbps(iso);
  o.require(hi <= lo * 1.05, "throughputs not within 5% of each other");
  o.require(sum <= iso * 1.10, "sum above isolated + 10%");
}

void criterion6(Context& ctx, Outcome& o) {
  const auto cfg = load("2c.csv", "toy.params.csv");
  const Run r = simulate(ctx, cfg, 60.0, 1);
  const auto ctmn = oracles::ctmn_scenario_throughput(cfg);
  const double a = r.report.wlans[0].throughput_bps;
  const double b = r.report.wlans[1].throughput_bps;
  const double iso = isolated_mcs8(1);
  o.detail << " B " << mbps(b) << " between starvation (" << mbps(0.15 * a) << ") and isolation (" << mbps(iso)
           << "); CTMN gap for B " << std::showpos << std::setprecision(3) << 100.0 * rel(b, ctmn[1])
           << std::noshowpos << "%";
  o.require(b > 0.15 * a, "B starved");
  o.require(b < 0.97 * iso, "B isolated");
}

void criterion7(Context& ctx, Outcome& o) {
  app::SweepSpec spec;
  spec.base.sim_time_s = 100.0;
  spec.base.out_dir = ctx.work / "c7";
  spec.wlan_counts = {2, 5, 10, 20, 50};
  spec.seeds = ctx.sweep_seeds;
  ctx.sweep = app::run_sweep(spec);
  for (const auto& pt : ctx.sweep) {
    const double dp = pt.collision_prob_mean - pt.bianchi_collision_prob;
    const double dt = rel(pt.throughput_mbps_mean, pt.bianchi_throughput_mbps);
    o.detail << " n=" << pt.n_wlans << ": p " << std::fixed << std::setprecision(3) << pt.collision_prob_mean << " vs "
             << pt.bianchi_collision_prob << ", S " << std::setprecision(3) << pt.throughput_mbps_mean << " vs "
             << pt.bianchi_throughput_mbps << " Mbps;" << std::defaultfloat;
    o.require(std::abs(dp) <= 0.05, "p off by " + std::to_string(dp) + " at n=" + std::to_string(pt.n_wlans));
    o.require(std::abs(dt) <= 0.10,
              "S off by " + std::to_string(100.0 * dt) + "% at n=" + std::to_string(pt.n_wlans));
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion8(Context& ctx, Outcome& o) {
  const auto cfg = load("2b.csv", "toy.params.csv");
  std::vector<std::string> stats;
  std::vector<std::string> traces;
  for (const char* tag : {"a", "b"}) {
    app::RunSpec spec;
    spec.sim_time_s = 10.0;
    spec.seed = 7;
    spec.trace = true;
    spec.out_dir = ctx.work / "c8" / tag;
    fs::remove_all(spec.out_dir);
    app::simulate(cfg, spec);
    stats.push_back(slurp(spec.out_dir / "stats.csv"));
    traces.push_back(slurp(spec.out_dir / "trace.csv"));
  }
  o.detail << " trace " << traces[0].size() << " bytes;";
  o.require(stats[0] == stats[1], "stats differ");
  o.require(traces[0] == traces[1], "traces differ");

  sim::Engine engine;
  engine.schedule(micros(7), sim::EventKind::kFrameStart, 1, 100);
  engine.schedule(micros(7), sim::EventKind::kFrameStart, 0, 200);
  engine.schedule(micros(7), sim::EventKind::kFrameEnd, 5, 300);
  std::vector<std::uint64_t> order;
  engine.run_until(micros(7), [&](const sim::Event& e) { order.push_back(e.payload); });
  const bool ordered = order == std::vector<std::uint64_t>{300, 200, 100};
  o.detail << " simultaneous frame-starts " << (ordered ? "in priority order" : "misordered");
  o.require(ordered, "simultaneous events misordered");
}

void criterion9(Context& ctx, Outcome& o) {
  sim::RandomStream rng(9);
  std::uint64_t events = 0;
  int deployments = 0;
  while (events < 1'000'000) {
    const auto cfg = test::random_scenario(rng);
    try {
      mac::Network net(cfg, test::options(static_cast<std::uint64_t>(deployments + 1), true));
      net.run(from_seconds(1.0));
      events += net.engine().dispatched();
      for (const auto& n : net.node_reports()) {
        const std::uint64_t rhs = n.delivered + n.dropped + n.buffered;
        ctx.conservation_gap += n.generated > rhs ? n.generated - rhs : rhs - n.generated;
      }
      ++deployments;
    } catch (const ConfigError&) {
      continue;  // unreachable station or co-located nodes
    }
  }
  o.detail << " " << ctx.runs << " acceptance runs plus " << deployments << " fuzzed deployments (" << events
           << " events), conservation gap " << ctx.conservation_gap;
  o.require(ctx.conservation_gap == 0, "packets unaccounted for");
}

void criterion10(Context& ctx, Outcome& o) {
  const auto cfg = app::fully_overlapping_scenario(50);
  const Run r = simulate(ctx, cfg, 10.0, 1);
  o.detail << " 50 WLANs x 10 s in " << std::setprecision(3) << r.wall_s << " s;";
  o.require(r.wall_s < 60.0, "slower than 60 s");
  if (ctx.sweep.empty()) {
    app::SweepSpec spec;
    spec.base.sim_time_s = 10.0;
    spec.base.out_dir = ctx.work / "c10";
    spec.wlan_counts = {2, 5, 10, 20, 50};
    spec.seeds = {1};
    ctx.sweep = app::run_sweep(spec);
  }
  o.detail << " events";
  bool monotone = true;
  for (std::size_t i = 0; i < ctx.sweep.size(); ++i) {
    o.detail << " n=" << ctx.sweep[i].n_wlans << ":" << std::fixed << std::setprecision(0)
             << ctx.sweep[i].events_dispatched << std::defaultfloat;
    if (i > 0) monotone = monotone && ctx.sweep[i].events_dispatched > ctx.sweep[i - 1].events_dispatched;
  }
  o.require(monotone, "events not increasing with n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Acceptance report"};
  std::string work = (fs::temp_directory_path() / "wlansim-acceptance").string();
  std::vector<int> known_gaps;
  std::string seeds = "1,2,3";
  std::vector<int> only;
  cli.add_option("--work", work, "Scratch directory")->capture_default_str();
  cli.add_option("--known-gap", known_gaps, "Criteria whose failure is documented and tolerated");
  cli.add_option("--sweep-seeds", seeds, "Seeds for the density sweep")->capture_default_str();
  cli.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(cli, argc, argv);

  Context ctx;
  ctx.work = work;
  fs::create_directories(ctx.work);
  ctx.sweep_seeds = app::parse_seed_list(seeds);

  const std::vector<std::function<void(Context&, Outcome&)>> criteria{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  const std::set<int> gaps(known_gaps.begin(), known_gaps.end());
  const std::set<int> selected(only.begin(), only.end());

  int hard_failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      criteria[i](ctx, o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::string verdict = o.pass ? "PASS" : "FAIL";
    if (!o.pass && gaps.count(id)) {
      verdict += " (known gap)";
    } else if (!o.pass) {
      ++hard_failures;
    }
    std::cout << "criterion " << id << ": " << verdict << " -" << o.detail.str() << std::endl;
  }
  return hard_failures == 0 ? 0 : 1;
}
