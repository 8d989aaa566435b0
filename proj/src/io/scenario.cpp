#include "wlansim/io/scenario.hpp"

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "wlansim/io/csv.hpp"
#include "wlansim/phy/channel_set.hpp"

namespace wlansim::io {

namespace {

constexpr std::array<std::string_view, 14> kColumns{
    "node_code",   "node_type",    "wlan_code", "x",       "y",           "z",            "primary_channel",
    "min_channel", "max_channel",  "tx_power_dbm", "cca_dbm", "traffic_model", "traffic_load", "dcb_policy"};

std::string describe(ScenarioError::Kind kind, const std::string& source, int line, int column,
                     const std::string& message) {
  std::string out = source;
  if (line > 0) out += ":" + std::to_string(line);
  if (column > 0) out += ":" + std::to_string(column);
  return out + ": " + std::string(to_string(kind)) + ": " + message;
}

class RowReader {
 public:
  RowReader(const std::string& source, const CsvRow& row, const std::array<int, kColumns.size()>& index)
      : source_(source), row_(row), index_(index) {}

  const std::string& text(std::size_t col) const {
    const int i = index_[col];
    if (i >= static_cast<int>(row_.fields.size())) {
      throw ScenarioError(ScenarioError::Kind::kMissingColumn, source_, row_.line, i + 1,
                          "row has no value for column '" + std::string(kColumns[col]) + "'");
    }
    return row_.fields[static_cast<std::size_t>(i)];
  }

  double number(std::size_t col) const {
    const auto v = parse_double(text(col));
    if (!v) fail(col, "expected a finite number, got '" + text(col) + "'");
    return *v;
  }

  int integer(std::size_t col) const {
    const auto v = parse_int(text(col));
    if (!v) fail(col, "expected an integer, got '" + text(col) + "'");
    return static_cast<int>(*v);
  }

  [[noreturn]] void fail(std::size_t col, const std::string& message,
                         ScenarioError::Kind kind = ScenarioError::Kind::kBadValue) const {
    throw ScenarioError(kind, source_, row_.line, index_[col] + 1, message);
  }

 private:
  const std::string& source_;
  const CsvRow& row_;
  const std::array<int, kColumns.size()>& index_;
};

NodeConfig read_node(const RowReader& r, int line) {
  NodeConfig n;
  n.source_line = line;
  n.node_code = r.text(0);
  if (n.node_code.empty()) r.fail(0, "empty node_code");
  const std::string& type = r.text(1);
  if (type == "AP") {
    n.type = NodeType::kAp;
  } else if (type == "STA") {
    n.type = NodeType::kSta;
  } else {
    r.fail(1, "node_type must be AP or STA, got '" + type + "'");
  }
  n.wlan_code = r.text(2);
  if (n.wlan_code.empty()) r.fail(2, "empty wlan_code");
  n.x = r.number(3);
  n.y = r.number(4);
  n.z = r.number(5);
  n.primary_channel = r.integer(6);
  n.min_channel = r.integer(7);
  n.max_channel = r.integer(8);
  n.tx_power_dbm = r.number(9);
  n.cca_dbm = r.number(10);
  const auto kind = traffic::parse_traffic_kind(r.text(11));
  if (!kind) r.fail(11, "traffic_model must be full_buffer, poisson or deterministic, got '" + r.text(11) + "'");
  n.traffic.kind = *kind;
  n.traffic.load_pps = r.number(12);
  const auto policy = mac::parse_dcb_policy(r.text(13));
  if (!policy) r.fail(13, "dcb_policy must be OP, SCB, AM or PU, got '" + r.text(13) + "'");
  n.dcb_policy = *policy;
  return n;
}

// Column number of a field in the canonical layout (used for validation errors).
int canonical_column(std::string_view name) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (kColumns[i] == name) return static_cast<int>(i) + 1;
  }
  return 0;
}

}  // namespace

bool operator==(const NodeConfig& a, const NodeConfig& b) {
  return a.node_code == b.node_code && a.type == b.type && a.wlan_code == b.wlan_code && a.x == b.x && a.y == b.y &&
         a.z == b.z && a.primary_channel == b.primary_channel && a.min_channel == b.min_channel &&
         a.max_channel == b.max_channel && a.tx_power_dbm == b.tx_power_dbm && a.cca_dbm == b.cca_dbm &&
         a.traffic.kind == b.traffic.kind && a.traffic.load_pps == b.traffic.load_pps && a.dcb_policy == b.dcb_policy;
}

ScenarioError::ScenarioError(Kind kind, std::string source, int line, int column, const std::string& message)
    : ConfigError(describe(kind, source, line, column, message)),
      kind_(kind),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

std::string_view to_string(ScenarioError::Kind kind) {
  switch (kind) {
    case ScenarioError::Kind::kIo: return "io";
    case ScenarioError::Kind::kMissingColumn: return "missing-column";
    case ScenarioError::Kind::kBadValue: return "bad-value";
    case ScenarioError::Kind::kDanglingReference: return "dangling-reference";
    case ScenarioError::Kind::kDuplicateNode: return "duplicate-node";
    case ScenarioError::Kind::kInvalid: return "invalid";
  }
  return "unknown";
}

std::vector<std::string> ScenarioConfig::wlan_codes() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const NodeConfig& n : nodes) {
    if (n.type == NodeType::kAp && seen.insert(n.wlan_code).second) out.push_back(n.wlan_code);
  }
  return out;
}

void ScenarioConfig::validate() const {
  const std::string source = "scenario";
  if (nodes.empty()) throw ScenarioError(ScenarioError::Kind::kInvalid, source, 0, 0, "scenario has no nodes");

  std::set<std::string> codes;
  std::map<std::string, const NodeConfig*> ap_of;
  for (const NodeConfig& n : nodes) {
    if (!codes.insert(n.node_code).second) {
      throw ScenarioError(ScenarioError::Kind::kDuplicateNode, source, n.source_line, 1,
                          "duplicate node_code '" + n.node_code + "'");
    }
    if (n.type == NodeType::kAp && !ap_of.emplace(n.wlan_code, &n).second) {
      throw ScenarioError(ScenarioError::Kind::kInvalid, source, n.source_line, canonical_column("wlan_code"),
                          "WLAN '" + n.wlan_code + "' has more than one AP");
    }
  }

  std::map<std::string, int> stations;
  for (const NodeConfig& n : nodes) {
    if (n.type == NodeType::kSta) {
      if (!ap_of.count(n.wlan_code)) {
        throw ScenarioError(ScenarioError::Kind::kDanglingReference, source, n.source_line,
                            canonical_column("wlan_code"),
                            "STA '" + n.node_code + "' references unknown WLAN '" + n.wlan_code + "'");
      }
      ++stations[n.wlan_code];
    }
    if (n.min_channel < 0 || n.max_channel >= phy::kMaxChannels || n.min_channel > n.primary_channel ||
        n.primary_channel > n.max_channel) {
      throw ScenarioError(ScenarioError::Kind::kInvalid, source, n.source_line, canonical_column("primary_channel"),
                          "channels must satisfy 0 <= min <= primary <= max <= " +
                              std::to_string(phy::kMaxChannels - 1));
    }
    if (n.type == NodeType::kAp) {
      const auto alloc = phy::ChannelSet::range(n.min_channel, n.max_channel, n.primary_channel);
      if (!alloc.valid_for_transmission()) {
        throw ScenarioError(ScenarioError::Kind::kInvalid, source, n.source_line, canonical_column("min_channel"),
                            "allocation " + alloc.to_string() + " is not an aligned block of 1, 2, 4 or 8 channels");
      }
    }
    try {
      n.traffic.validate();
    } catch (const ConfigError& e) {
      throw ScenarioError(ScenarioError::Kind::kBadValue, source, n.source_line, canonical_column("traffic_load"),
                          e.what());
    }
  }
  for (const auto& [wlan, ap] : ap_of) {
    if (!stations.count(wlan)) {
      throw ScenarioError(ScenarioError::Kind::kInvalid, source, ap->source_line, canonical_column("wlan_code"),
                          "WLAN '" + wlan + "' has no STA");
    }
  }

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double dx = nodes[i].x - nodes[j].x;
      const double dy = nodes[i].y - nodes[j].y;
      const double dz = nodes[i].z - nodes[j].z;
      if (!(std::sqrt(dx * dx + dy * dy + dz * dz) > 0.0)) {
        throw ScenarioError(ScenarioError::Kind::kInvalid, source, nodes[i].source_line, canonical_column("x"),
                            "node '" + nodes[i].node_code + "' shares its position with '" + nodes[j].node_code + "'");
      }
    }
  }

  for (const LinkObstacles& o : obstacles) {
    if (!codes.count(o.node_a) || !codes.count(o.node_b)) {
      throw ScenarioError(ScenarioError::Kind::kDanglingReference, "obstacles", 0, 0,
                          "obstacle entry references unknown node '" + (codes.count(o.node_a) ? o.node_b : o.node_a) +
                              "'");
    }
    if (o.walls < 0 || o.floors < 0) {
      throw ScenarioError(ScenarioError::Kind::kBadValue, "obstacles", 0, 0, "negative wall/floor count");
    }
  }

  params.validate();
  mac.validate();
}

ScenarioConfig parse_scenario(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  return parse_scenario_text(read_text_file(path), path.string(), warnings);
}

ScenarioConfig parse_scenario_text(std::string_view text, const std::string& source_name,
                                   std::vector<std::string>* warnings) {
  const CsvTable table = parse_csv(text);
  if (table.header.empty()) {
    throw ScenarioError(ScenarioError::Kind::kMissingColumn, source_name, 1, 0, "missing header row");
  }
  std::array<int, kColumns.size()> index{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    index[c] = table.column(kColumns[c]);
    if (index[c] < 0) {
      throw ScenarioError(ScenarioError::Kind::kMissingColumn, source_name, table.header_line, 0,
                          "header lacks column '" + std::string(kColumns[c]) + "'");
    }
  }
  if (warnings != nullptr) {
    for (const std::string& h : table.header) {
      bool known = false;
      for (std::string_view c : kColumns) known = known || c == h;
      if (!known) warnings->push_back(source_name + ": ignoring unknown column '" + h + "'");
    }
  }

  ScenarioConfig config;
  for (const CsvRow& row : table.rows) {
    config.nodes.push_back(read_node(RowReader(source_name, row, index), row.line));
  }
  try {
    config.validate();
  } catch (const ScenarioError& e) {
    throw ScenarioError(e.kind(), source_name, e.line(), e.column(),
                        std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
  return config;
}

std::string write_scenario(const ScenarioConfig& config) {
  std::ostringstream out;
  out << kScenarioHeader << '\n';
  for (const NodeConfig& n : config.nodes) {
    out << n.node_code << ',' << (n.type == NodeType::kAp ? "AP" : "STA") << ',' << n.wlan_code << ','
        << format_exact(n.x) << ',' << format_exact(n.y) << ',' << format_exact(n.z) << ',' << n.primary_channel
        << ',' << n.min_channel << ',' << n.max_channel << ',' << format_exact(n.tx_power_dbm) << ','
        << format_exact(n.cca_dbm) << ',' << traffic::to_string(n.traffic.kind) << ','
        << format_exact(n.traffic.load_pps) << ',' << mac::to_string(n.dcb_policy) << '\n';
  }
  return out.str();
}

std::vector<LinkObstacles> parse_obstacles(const std::filesystem::path& path) {
  const std::string source = path.string();
  const CsvTable table = parse_csv(read_text_file(path));
  const std::array<std::string_view, 4> cols{"node_a", "node_b", "walls", "floors"};
  std::array<int, 4> idx{};
  for (std::size_t c = 0; c < cols.size(); ++c) {
    idx[c] = table.column(cols[c]);
    if (idx[c] < 0) {
      throw ScenarioError(ScenarioError::Kind::kMissingColumn, source, table.header_line, 0,
                          "header lacks column '" + std::string(cols[c]) + "'");
    }
  }
  std::vector<LinkObstacles> out;
  for (const CsvRow& row : table.rows) {
    auto field = [&](std::size_t c) -> const std::string& {
      const auto i = static_cast<std::size_t>(idx[c]);
      if (i >= row.fields.size()) {
        throw ScenarioError(ScenarioError::Kind::kMissingColumn, source, row.line, idx[c] + 1, "short row");
      }
      return row.fields[i];
    };
    auto count = [&](std::size_t c) {
      const auto v = parse_int(field(c));
      if (!v || *v < 0) {
        throw ScenarioError(ScenarioError::Kind::kBadValue, source, row.line, idx[c] + 1,
                            "expected a non-negative integer");
      }
      return static_cast<int>(*v);
    };
    out.push_back(LinkObstacles{field(0), field(1), count(2), count(3)});
  }
  return out;
}

}  // namespace wlansim::io
