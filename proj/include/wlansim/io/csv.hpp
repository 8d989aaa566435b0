#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wlansim::io {

// Minimal comma-separated dialect: no quoting, `#` starts a comment line,
// blank lines are skipped, fields are whitespace-trimmed.
struct CsvRow {
  int line = 0;
  std::vector<std::string> fields;
};

struct CsvTable {
  int header_line = 0;
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  /// Index of `column` in the header, or -1.
  int column(std::string_view name) const;
};

/// Empty header when the text holds no data lines.
CsvTable parse_csv(std::string_view text);

/// Throws ScenarioError(kIo) when unreadable.
std::string read_text_file(const std::filesystem::path& path);

// Locale-independent number handling.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);
std::string format_fixed(double value, int decimals);
/// Shortest representation that parses back to the same double.
std::string format_exact(double value);

}  // namespace wlansim::io
