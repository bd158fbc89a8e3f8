#include "manifest.hpp"

#include <fstream>

#include "gldp/common.hpp"

#ifndef GLDP_VERSION
#define GLDP_VERSION "v0.0.0-unknown"
#endif

namespace gldp::cli {

void write_manifest(const RunContext& ctx, const std::string& command,
                    const Config& cfg, const nlohmann::json& seeds,
                    const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["command"] = command;
  m["version"] = GLDP_VERSION;
  m["config"] = cfg.j;
  m["seeds"] = seeds;
  m["outputs"] = outputs;
  std::filesystem::path p = ctx.out_dir / "manifest.json";
  std::ofstream f(p, std::ios::binary);
  if (!f) throw io_error("cannot write '" + p.string() + "'");
  f << m.dump(2) << "\n";
}

}  // namespace gldp::cli
