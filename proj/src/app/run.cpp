#include "wlansim/app/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "wlansim/error.hpp"
#include "wlansim/io/csv.hpp"
#include "wlansim/io/output.hpp"
#include "wlansim/io/params_file.hpp"
#include "wlansim/oracles/bianchi.hpp"
#include "wlansim/oracles/contention.hpp"
#include "wlansim/oracles/ctmn.hpp"
#include "wlansim/phy/frames.hpp"

namespace wlansim::app {

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::kSimulate: return "simulate";
    case RunMode::kOracleBianchi: return "oracle-bianchi";
    case RunMode::kOracleCtmn: return "oracle-ctmn";
    case RunMode::kCompare: return "compare";
  }
  return "?";
}

std::optional<RunMode> parse_run_mode(std::string_view text) {
  for (RunMode m : {RunMode::kSimulate, RunMode::kOracleBianchi, RunMode::kOracleCtmn, RunMode::kCompare}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

void RunSpec::validate() const {
  if (!(sim_time_s > 0.0) || !std::isfinite(sim_time_s)) throw ConfigError("--time must be a positive number");
  if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be >= 0");
}

io::ScenarioConfig load_scenario(const RunSpec& spec, std::vector<std::string>* warnings) {
  io::ScenarioConfig config = io::parse_scenario(spec.scenario, warnings);
  if (spec.params) io::apply_parameters_file(*spec.params, config.params, config.mac);
  if (spec.links) config.obstacles = io::parse_obstacles(*spec.links);
  config.validate();
  return config;
}

SimulationResult simulate(const io::ScenarioConfig& config, const RunSpec& spec) {
  spec.validate();
  io::prepare_output_dir(spec.out_dir);
  const io::OutputPaths paths{spec.out_dir};

  std::ofstream trace_file;
  std::unique_ptr<io::NodeLogWriter> logs;
  mac::RunOptions options;
  options.seed = spec.seed;
  if (spec.trace) {
    trace_file.open(paths.trace(), std::ios::binary | std::ios::trunc);
    if (!trace_file) throw ConfigError("cannot write '" + paths.trace().string() + "'");
    trace_file << io::kTraceHeader << '\n';
    options.trace = &trace_file;
  }
  if (spec.logs) {
    logs = std::make_unique<io::NodeLogWriter>(paths.logs());
    options.node_log = [&logs](const std::string& node, std::string_view line) { logs->write(node, line); };
  }

  mac::Network network(config, options);
  SimulationResult result;
  result.report = network.run(from_seconds(spec.sim_time_s));
  result.nodes = network.node_reports();
  io::write_outputs(result.report, paths);
  if (logs) logs->flush();
  return result;
}

io::StatsReport bianchi_report(const io::ScenarioConfig& config) {
  const auto wlans = oracles::summarize_wlans(config);
  const int n = static_cast<int>(wlans.size());
  const phy::PhyMacParams& p = config.params;
  const oracles::WlanSummary& first = wlans.front();
  const oracles::BianchiResult b = oracles::bianchi_throughput(n, p, first.mcs, first.n_agg, config.mac.cw_stages);

  // Airtime share of one contender: its successes and its collided RTSs.
  const phy::FrameDurations d = phy::frame_durations(p, first.n_agg, first.mcs, 1);
  const double slot = to_seconds(p.empty_slot);
  const double t_s = to_seconds(phy::exchange_airtime(p, d) + p.difs);
  const double t_c = to_seconds(d.rts + p.difs);
  const double p_tr = 1.0 - std::pow(1.0 - b.tau, n);
  const double p_s = n * b.tau * std::pow(1.0 - b.tau, n - 1) / p_tr;
  const double cycle = (1.0 - p_tr) * slot + p_tr * p_s * t_s + p_tr * (1.0 - p_s) * t_c;
  const double own_success = b.tau * std::pow(1.0 - b.tau, n - 1);
  const double occupancy = (own_success * to_seconds(phy::exchange_airtime(p, d)) +
                            (b.tau - own_success) * to_seconds(d.rts)) / cycle;

  std::vector<io::WlanTotals> totals;
  for (const auto& w : wlans) {
    totals.emplace_back();
    totals.back().wlan_code = w.wlan_code;
  }
  io::StatsReport report = io::finalize_stats(totals, 1.0);
  for (io::WlanStats& s : report.wlans) {
    s.throughput_bps = b.per_wlan_throughput_bps;
    s.collision_prob = b.collision_prob;
    s.no_attempts = false;
    s.occupancy = occupancy;
  }
  return report;
}

io::StatsReport ctmn_report(const io::ScenarioConfig& config) {
  const auto wlans = oracles::summarize_wlans(config);
  const oracles::CtmnModel model = oracles::ctmn_model(config);
  const auto pi = oracles::ctmn_stationary(model);
  std::vector<double> payload;
  for (const auto& w : wlans) payload.push_back(static_cast<double>(w.n_agg) * config.params.data_bits);
  const auto throughput = oracles::ctmn_throughput(model, pi, payload);
  const auto active = oracles::ctmn_activity(model, pi);

  std::vector<io::WlanTotals> totals;
  for (const auto& w : wlans) {
    totals.emplace_back();
    totals.back().wlan_code = w.wlan_code;
  }
  io::StatsReport report = io::finalize_stats(totals, 1.0);
  for (std::size_t w = 0; w < wlans.size(); ++w) {
    report.wlans[w].throughput_bps = throughput[w];
    report.wlans[w].no_attempts = false;
    report.wlans[w].occupancy = active[w];
  }
  return report;
}

std::vector<CompareRow> compare_reports(const io::StatsReport& simulated, const io::StatsReport& oracle) {
  std::vector<CompareRow> rows;
  for (const io::WlanStats& s : simulated.wlans) {
    const io::WlanStats* o = oracle.find(s.wlan_code);
    if (o == nullptr) throw ContractViolation("oracle has no WLAN '" + s.wlan_code + "'");
    CompareRow row{s.wlan_code, s.throughput_bps * 1e-6, o->throughput_bps * 1e-6, 0.0};
    row.relative_error = row.oracle_mbps > 0.0 ? (row.simulated_mbps - row.oracle_mbps) / row.oracle_mbps
                                               : (row.simulated_mbps > 0.0 ? INFINITY : 0.0);
    rows.push_back(row);
  }
  return rows;
}

std::string format_compare_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  out << "wlan_code,simulated_mbps,ctmn_mbps,relative_error\n";
  for (const CompareRow& r : rows) {
    out << r.wlan_code << ',' << io::format_fixed(r.simulated_mbps, 6) << ',' << io::format_fixed(r.oracle_mbps, 6)
        << ',' << io::format_fixed(r.relative_error, 6) << '\n';
  }
  return out.str();
}

namespace {

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  std::replace(text.begin(), text.end(), '\r', ' ');
  return text;
}

}  // namespace

int report_exception(std::ostream& err) {
  try {
    throw;
  } catch (const ContractViolation& e) {
    err << "error,contract," << one_line(e.what()) << '\n';
    return 3;
  } catch (const ConfigError& e) {
    err << "error,config," << one_line(e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error,internal," << one_line(e.what()) << '\n';
    return 3;
  }
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    spec.validate();
    std::vector<std::string> warnings;
    const io::ScenarioConfig config = load_scenario(spec, &warnings);
    for (const std::string& w : warnings) err << "warning," << one_line(w) << '\n';

    switch (spec.mode) {
      case RunMode::kSimulate:
        simulate(config, spec);
        return 0;
      case RunMode::kOracleBianchi:
      case RunMode::kOracleCtmn: {
        io::prepare_output_dir(spec.out_dir);
        const io::StatsReport report =
            spec.mode == RunMode::kOracleBianchi ? bianchi_report(config) : ctmn_report(config);
        const std::string csv = io::format_stats_csv(report);
        io::write_text_file(spec.out_dir / (std::string(to_string(spec.mode)) + ".csv"), csv);
        out << csv;
        return 0;
      }
      case RunMode::kCompare: {
        const SimulationResult sim = simulate(config, spec);
        const auto rows = compare_reports(sim.report, ctmn_report(config));
        const std::string csv = format_compare_csv(rows);
        io::write_text_file(spec.out_dir / "compare.csv", csv);
        out << csv;
        const bool within = std::all_of(rows.begin(), rows.end(), [&](const CompareRow& r) {
          return std::abs(r.relative_error) <= spec.tolerance;
        });
        return within ? 0 : 1;
      }
    }
    return 0;
  } catch (...) {
    return report_exception(err);
  }
}

}  // namespace wlansim::app
