// Command-line front end: single runs, oracles, comparisons and sweeps.
#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "wlansim/app/run.hpp"
#include "wlansim/app/sweep.hpp"
#include "wlansim/error.hpp"
#include "wlansim/simd/kernels.hpp"

namespace {

bool on_off(const std::string& value) { return value == "on"; }

}  // namespace

int main(int argc, char** argv) {
  using namespace wlansim;
  CLI::App cli{"Discrete-event simulator of 802.11 WLAN deployments with analytical oracles"};
  cli.set_version_flag("--version", "wlansim 1.0.0");

  app::RunSpec spec;
  std::string scenario;
  std::string params;
  std::string links;
  std::string out_dir = "out";
  std::string logs = "off";
  std::string trace = "off";
  std::string mode = "simulate";
  std::string sweep_wlans;
  std::string seeds;
  std::string simd = "auto";
  unsigned threads = 0;

  cli.add_option("--scenario", scenario, "Scenario CSV")->check(CLI::ExistingFile);
  cli.add_option("--params", params, "parameter,value overrides (PHY/MAC constants, n_agg, mcs, ...)")
      ->check(CLI::ExistingFile);
  cli.add_option("--links", links, "node_a,node_b,walls,floors obstacle table")->check(CLI::ExistingFile);
  cli.add_option("--time", spec.sim_time_s, "Simulated time in seconds")->capture_default_str();
  cli.add_option("--seed", spec.seed, "Master random seed")->capture_default_str();
  cli.add_option("--out", out_dir, "Output directory")->capture_default_str();
  cli.add_option("--logs", logs, "Per-node state logs")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  cli.add_option("--trace", trace, "Event trace")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  cli.add_option("--mode", mode, "What to run")
      ->check(CLI::IsMember({"simulate", "oracle-bianchi", "oracle-ctmn", "compare"}))
      ->capture_default_str();
  cli.add_option("--tolerance", spec.tolerance, "compare: allowed relative error")->capture_default_str();
  cli.add_option("--sweep-wlans", sweep_wlans, "Fully-overlapping density sweep, A..B or a list");
  cli.add_option("--seeds", seeds, "Seed list for sweeps, A..B or a list");
  cli.add_option("--threads", threads, "Sweep worker threads (0 = all cores)");
  cli.add_option("--simd", simd, "Kernel variant")->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));

  try {
    cli.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error,usage," << e.what() << '\n';
    return 2;
  }

  if (!simd::use_kernels(simd)) {
    std::cerr << "error,config,kernel variant '" << simd << "' is not available on this machine\n";
    return 2;
  }

  spec.scenario = scenario;
  if (!params.empty()) spec.params = params;
  if (!links.empty()) spec.links = links;
  spec.out_dir = out_dir;
  spec.logs = on_off(logs);
  spec.trace = on_off(trace);
  spec.mode = *app::parse_run_mode(mode);

  const bool sweep = !sweep_wlans.empty() || !seeds.empty();
  if (!sweep) {
    if (scenario.empty()) {
      std::cerr << "error,usage,--scenario is required unless --sweep-wlans is given\n";
      return 2;
    }
    return app::run(spec, std::cout, std::cerr);
  }

  try {
    if (spec.mode != app::RunMode::kSimulate) throw ConfigError("sweeps run in simulate mode only");
    app::SweepSpec s;
    s.base = spec;
    s.threads = threads;
    if (!sweep_wlans.empty()) {
      s.wlan_counts = app::parse_int_axis(sweep_wlans);
    } else if (scenario.empty()) {
      throw ConfigError("--seeds without --sweep-wlans needs --scenario");
    }
    s.seeds = seeds.empty() ? std::vector<std::uint64_t>{spec.seed} : app::parse_seed_list(seeds);
    std::cout << app::format_sweep_csv(app::run_sweep(s));
    return 0;
  } catch (...) {
    return app::report_exception(std::cerr);
  }
}
