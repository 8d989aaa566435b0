#include "wlansim/app/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "wlansim/app/generate.hpp"
#include "wlansim/error.hpp"
#include "wlansim/io/csv.hpp"
#include "wlansim/io/output.hpp"
#include "wlansim/io/params_file.hpp"
#include "wlansim/oracles/bianchi.hpp"
#include "wlansim/oracles/contention.hpp"

namespace wlansim::app {

namespace {

template <typename T>
std::vector<T> parse_axis(std::string_view text, std::string_view what) {
  std::vector<T> out;
  auto bad = [&] { return ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'"); };
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto lo = io::parse_int(text.substr(0, dots));
    const auto hi = io::parse_int(text.substr(dots + 2));
    if (!lo || !hi || *lo > *hi || *lo < 0) throw bad();
    for (long long v = *lo; v <= *hi; ++v) out.push_back(static_cast<T>(v));
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const auto v = io::parse_int(item);
    if (!v || *v < 0) throw bad();
    out.push_back(static_cast<T>(*v));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw bad();
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Sample standard deviation; 0 for a single sample.
double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

struct Job {
  std::size_t point = 0;
  std::uint64_t seed = 0;
  io::StatsReport report;
};

}  // namespace

std::vector<int> parse_int_axis(std::string_view text) {
  auto out = parse_axis<int>(text, "WLAN axis");
  if (std::any_of(out.begin(), out.end(), [](int n) { return n < 1; })) {
    throw ConfigError("WLAN counts must be >= 1");
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) { return parse_axis<std::uint64_t>(text, "seed list"); }

std::vector<SweepPoint> run_sweep(const SweepSpec& spec) {
  spec.base.validate();
  if (spec.seeds.empty()) throw ConfigError("sweep needs at least one seed");
  io::prepare_output_dir(spec.base.out_dir);

  // One scenario per point, built up front so failures surface before any run.
  std::vector<io::ScenarioConfig> scenarios;
  std::vector<std::string> labels;
  std::string params_text;
  if (spec.wlan_counts.empty()) {
    scenarios.push_back(load_scenario(spec.base));
    labels.emplace_back("");
  } else {
    phy::PhyMacParams params;
    mac::MacConfig mac;
    mac.fixed_mcs = 8;
    if (spec.base.params) io::apply_parameters_file(*spec.base.params, params, mac);
    // Written beside each point's scenario so a plain run reproduces it.
    params_text = "parameter,value\n";
    if (spec.base.params) {
      const io::CsvTable table = io::parse_csv(io::read_text_file(*spec.base.params));
      const auto k = static_cast<std::size_t>(table.column("parameter"));
      const auto v = static_cast<std::size_t>(table.column("value"));
      for (const io::CsvRow& row : table.rows) params_text += row.fields[k] + "," + row.fields[v] + "\n";
    }
    params_text += "mcs," + std::to_string(*mac.fixed_mcs) + "\n";
    for (int n : spec.wlan_counts) {
      scenarios.push_back(fully_overlapping_scenario(n, params, mac));
      labels.push_back("n" + std::to_string(n));
    }
  }

  std::vector<Job> jobs;
  for (std::size_t p = 0; p < scenarios.size(); ++p) {
    for (std::uint64_t seed : spec.seeds) jobs.push_back(Job{p, seed, {}});
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::string error_label;
  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      {
        std::lock_guard lock(error_mutex);
        if (error) return;
      }
      Job& job = jobs[j];
      RunSpec point = spec.base;
      point.seed = job.seed;
      point.out_dir = spec.base.out_dir;
      if (!labels[job.point].empty()) point.out_dir /= labels[job.point];
      point.out_dir /= "seed" + std::to_string(job.seed);
      try {
        io::prepare_output_dir(point.out_dir);
        io::write_text_file(point.out_dir / "scenario.csv", io::write_scenario(scenarios[job.point]));
        if (!params_text.empty()) io::write_text_file(point.out_dir / "params.csv", params_text);
        job.report = simulate(scenarios[job.point], point).report;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
          error_label = (labels[job.point].empty() ? std::string() : labels[job.point] + " ") + "seed " +
                        std::to_string(job.seed);
        }
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = static_cast<unsigned>(
      std::min<std::size_t>(spec.threads == 0 ? hw : spec.threads, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const ContractViolation& e) {
      throw ContractViolation("sweep point " + error_label + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("sweep point " + error_label + ": " + e.what());
    } catch (const std::exception& e) {
      throw Error("sweep point " + error_label + ": " + e.what());
    }
  }

  std::vector<SweepPoint> points;
  for (std::size_t p = 0; p < scenarios.size(); ++p) {
    SweepPoint row;
    const auto wlans = oracles::summarize_wlans(scenarios[p]);
    row.n_wlans = static_cast<int>(wlans.size());
    std::vector<double> per_wlan, aggregate, collision, events, wall;
    for (const Job& job : jobs) {
      if (job.point != p) continue;
      double sum_bps = 0.0;
      double sum_p = 0.0;
      for (const io::WlanStats& w : job.report.wlans) {
        sum_bps += w.throughput_bps;
        sum_p += w.collision_prob;
      }
      const auto n = static_cast<double>(job.report.wlans.size());
      per_wlan.push_back(sum_bps / n * 1e-6);
      aggregate.push_back(sum_bps * 1e-6);
      collision.push_back(sum_p / n);
      events.push_back(static_cast<double>(job.report.events_dispatched));
      wall.push_back(job.report.wall_clock_s);
    }
    row.seeds = per_wlan.size();
    row.throughput_mbps_mean = mean(per_wlan);
    row.throughput_mbps_std = stddev(per_wlan);
    row.aggregate_mbps_mean = mean(aggregate);
    row.collision_prob_mean = mean(collision);
    row.collision_prob_std = stddev(collision);
    const auto b = oracles::bianchi_throughput(row.n_wlans, scenarios[p].params, wlans.front().mcs,
                                               wlans.front().n_agg, scenarios[p].mac.cw_stages);
    row.bianchi_throughput_mbps = b.per_wlan_throughput_bps * 1e-6;
    row.bianchi_collision_prob = b.collision_prob;
    row.events_dispatched = mean(events);
    row.wall_clock_s = mean(wall);
    points.push_back(row);
  }
  io::write_text_file(spec.base.out_dir / "sweep.csv", format_sweep_csv(points));
  return points;
}

std::string format_sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << "n_wlans,seeds,throughput_mbps_mean,throughput_mbps_std,aggregate_mbps_mean,collision_prob_mean,"
         "collision_prob_std,bianchi_throughput_mbps,bianchi_collision_prob,events_dispatched,wall_clock_s\n";
  for (const SweepPoint& p : points) {
    out << p.n_wlans << ',' << p.seeds << ',' << io::format_fixed(p.throughput_mbps_mean, 6) << ','
        << io::format_fixed(p.throughput_mbps_std, 6) << ',' << io::format_fixed(p.aggregate_mbps_mean, 6) << ','
        << io::format_fixed(p.collision_prob_mean, 6) << ',' << io::format_fixed(p.collision_prob_std, 6) << ','
        << io::format_fixed(p.bianchi_throughput_mbps, 6) << ',' << io::format_fixed(p.bianchi_collision_prob, 6)
        << ',' << io::format_fixed(p.events_dispatched, 1) << ',' << io::format_fixed(p.wall_clock_s, 6) << '\n';
  }
  return out.str();
}

}  // namespace wlansim::app
