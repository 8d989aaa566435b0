#pragma once

#include <filesystem>
#include <string_view>

#include "wlansim/mac/mac_config.hpp"
#include "wlansim/phy/params.hpp"

namespace wlansim::io {

/// Applies a `parameter,value` table on top of existing values. Durations
/// are given in microseconds; `sensitivity_mcsK` sets one entry of the
/// sensitivity table. Unknown keys and bad values raise ScenarioError.
void apply_parameters(std::string_view text, const std::string& source_name, phy::PhyMacParams& params,
                      mac::MacConfig& mac);
void apply_parameters_file(const std::filesystem::path& path, phy::PhyMacParams& params, mac::MacConfig& mac);

}  // namespace wlansim::io
