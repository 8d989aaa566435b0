#include "wlansim/io/params_file.hpp"

#include <functional>
#include <map>
#include <string>

#include "wlansim/io/csv.hpp"
#include "wlansim/io/scenario.hpp"

namespace wlansim::io {

namespace {

struct Setter {
  enum class Type { kReal, kInt, kMicros } type;
  std::function<void(double)> apply;
};

std::map<std::string, Setter, std::less<>> setters(phy::PhyMacParams& p, mac::MacConfig& m) {
  using T = Setter::Type;
  auto real = [](double& f) { return Setter{T::kReal, [&f](double v) { f = v; }}; };
  auto integer = [](int& f) { return Setter{T::kInt, [&f](double v) { f = static_cast<int>(v); }}; };
  auto us = [](Duration& f) { return Setter{T::kMicros, [&f](double v) { f = micros(static_cast<std::int64_t>(v)); }}; };

  std::map<std::string, Setter, std::less<>> s{
      {"center_frequency_hz", real(p.center_frequency_hz)},
      {"basic_channel_width_hz", real(p.basic_channel_width_hz)},
      {"tx_gain_db", real(p.tx_gain_db)},
      {"rx_gain_db", real(p.rx_gain_db)},
      {"noise_floor_dbm", real(p.noise_floor_dbm)},
      {"legacy_symbol_us", us(p.legacy_symbol)},
      {"he_symbol_us", us(p.he_symbol)},
      {"subcarriers", integer(p.subcarriers)},
      {"spatial_streams", integer(p.spatial_streams)},
      {"empty_slot_us", us(p.empty_slot)},
      {"sifs_us", us(p.sifs)},
      {"difs_us", us(p.difs)},
      {"pifs_us", us(p.pifs)},
      {"legacy_preamble_us", us(p.legacy_preamble)},
      {"he_su_preamble_us", us(p.he_su_preamble)},
      {"ack_us", us(p.ack)},
      {"block_ack_us", us(p.block_ack)},
      {"max_ppdu_us", us(p.max_ppdu)},
      {"legacy_symbol_bits", integer(p.legacy_symbol_bits)},
      {"data_bits", integer(p.data_bits)},
      {"rts_bits", integer(p.rts_bits)},
      {"cts_bits", integer(p.cts_bits)},
      {"service_field_bits", integer(p.service_field_bits)},
      {"mac_header_bits", integer(p.mac_header_bits)},
      {"contention_window", integer(p.contention_window)},
      {"n_agg", integer(m.n_agg)},
      {"cw_stages", integer(m.cw_stages)},
      {"buffer_capacity", integer(m.buffer_capacity)},
      {"mcs", Setter{T::kInt, [&m](double v) { m.fixed_mcs = static_cast<int>(v); }}},
      {"capture_threshold_db", Setter{T::kReal, [&m](double v) { m.capture_threshold_db = v; }}},
  };
  for (int i = 0; i < phy::kMcsCount; ++i) {
    s.emplace("sensitivity_mcs" + std::to_string(i), real(p.sensitivity_dbm[static_cast<std::size_t>(i)]));
  }
  return s;
}

}  // namespace

void apply_parameters(std::string_view text, const std::string& source_name, phy::PhyMacParams& params,
                      mac::MacConfig& mac) {
  const CsvTable table = parse_csv(text);
  const int key_col = table.column("parameter");
  const int value_col = table.column("value");
  if (key_col < 0 || value_col < 0) {
    throw ScenarioError(ScenarioError::Kind::kMissingColumn, source_name, table.header_line, 0,
                        "header must contain 'parameter' and 'value'");
  }
  const auto table_setters = setters(params, mac);
  for (const CsvRow& row : table.rows) {
    const auto k = static_cast<std::size_t>(key_col);
    const auto v = static_cast<std::size_t>(value_col);
    if (row.fields.size() <= std::max(k, v)) {
      throw ScenarioError(ScenarioError::Kind::kMissingColumn, source_name, row.line,
                          static_cast<int>(std::max(k, v)) + 1, "short row");
    }
    const auto it = table_setters.find(row.fields[k]);
    if (it == table_setters.end()) {
      throw ScenarioError(ScenarioError::Kind::kBadValue, source_name, row.line, key_col + 1,
                          "unknown parameter '" + row.fields[k] + "'");
    }
    const Setter& setter = it->second;
    if (setter.type == Setter::Type::kReal) {
      const auto value = parse_double(row.fields[v]);
      if (!value) {
        throw ScenarioError(ScenarioError::Kind::kBadValue, source_name, row.line, value_col + 1,
                            "expected a number for '" + row.fields[k] + "'");
      }
      setter.apply(*value);
    } else {
      const auto value = parse_int(row.fields[v]);
      if (!value) {
        throw ScenarioError(ScenarioError::Kind::kBadValue, source_name, row.line, value_col + 1,
                            "expected an integer for '" + row.fields[k] + "'");
      }
      setter.apply(static_cast<double>(*value));
    }
  }
  try {
    params.validate();
    mac.validate();
  } catch (const ConfigError& e) {
    throw ScenarioError(ScenarioError::Kind::kInvalid, source_name, 0, 0, e.what());
  }
}

void apply_parameters_file(const std::filesystem::path& path, phy::PhyMacParams& params, mac::MacConfig& mac) {
  apply_parameters(read_text_file(path), path.string(), params, mac);
}

}  // namespace wlansim::io
