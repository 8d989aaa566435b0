#include "wlansim/io/output.hpp"

#include <sstream>
#include <system_error>

#include "wlansim/error.hpp"
#include "wlansim/io/csv.hpp"

namespace wlansim::io {

void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const auto probe = dir / ".wlansim_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "probe")) throw ConfigError("output directory '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

std::string format_summary_csv(const StatsReport& report) {
  std::ostringstream out;
  out << "sim_time_s,events_dispatched,wall_clock_s\n"
      << format_exact(report.sim_time_s) << ',' << report.events_dispatched << ','
      << format_fixed(report.wall_clock_s, 6) << '\n';
  return out.str();
}

void write_outputs(const StatsReport& report, const OutputPaths& paths) {
  write_text_file(paths.stats(), format_stats_csv(report));
  write_text_file(paths.summary(), format_summary_csv(report));
}

NodeLogWriter::NodeLogWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create log directory '" + dir_.string() + "'");
}

void NodeLogWriter::write(const std::string& node_code, std::string_view line) {
  auto it = files_.find(node_code);
  if (it == files_.end()) {
    auto file = std::make_unique<std::ofstream>(dir_ / (node_code + ".log"), std::ios::binary | std::ios::trunc);
    if (!*file) throw ConfigError("cannot open log file for node '" + node_code + "'");
    it = files_.emplace(node_code, std::move(file)).first;
  }
  *it->second << line << '\n';
}

void NodeLogWriter::flush() {
  for (auto& [code, file] : files_) file->flush();
}

}  // namespace wlansim::io
