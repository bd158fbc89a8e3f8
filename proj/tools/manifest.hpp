#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace gldp::cli {

// manifest.json: the echoed config, the build version, every seed the run
// derives from, and the list of produced files.  No timestamps, so a rerun
// of the same config reproduces the manifest byte for byte.
void write_manifest(const RunContext& ctx, const std::string& command,
                    const Config& cfg, const nlohmann::json& seeds,
                    const std::vector<std::string>& outputs);

}  // namespace gldp::cli
