#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "wlansim/io/stats.hpp"

namespace wlansim::io {

inline constexpr std::string_view kTraceHeader = "time_us,kind,node,detail";

struct OutputPaths {
  std::filesystem::path dir;

  std::filesystem::path stats() const { return dir / "stats.csv"; }
  std::filesystem::path summary() const { return dir / "summary.csv"; }
  std::filesystem::path trace() const { return dir / "trace.csv"; }
  std::filesystem::path logs() const { return dir / "logs"; }
};

/// Creates `dir` if needed and proves it writable with a probe file.
/// Throws ConfigError otherwise. Called before any simulation work.
void prepare_output_dir(const std::filesystem::path& dir);

/// Writes `content` atomically enough for our purposes (truncate + write).
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// `sim_time_s,events_dispatched,wall_clock_s`; kept apart from the stats
/// file because wall-clock time is not reproducible.
std::string format_summary_csv(const StatsReport& report);

/// Stats (and summary) files for a finished run.
void write_outputs(const StatsReport& report, const OutputPaths& paths);

/// Lazily opened per-node log files under `dir`, named `<node_code>.log`.
class NodeLogWriter {
 public:
  explicit NodeLogWriter(std::filesystem::path dir);
  void write(const std::string& node_code, std::string_view line);
  void flush();

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::unique_ptr<std::ofstream>> files_;
};

}  // namespace wlansim::io
