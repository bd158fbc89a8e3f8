#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "gldp/common.hpp"
#include "gldp/io.hpp"

namespace gldp::cli {

void run_sample(const Config& cfg, const RunContext& ctx);
void run_norms(const Config& cfg, const RunContext& ctx);
void run_lln(const Config& cfg, const RunContext& ctx, bool sparse);
void run_simulate(const Config& cfg, const RunContext& ctx);
void run_continuum(const Config& cfg, const RunContext& ctx);
void run_continuity(const Config& cfg, const RunContext& ctx);
void run_ldp_mc(const Config& cfg, const RunContext& ctx);
void run_rate(const Config& cfg, const RunContext& ctx);
void run_staircase(const Config& cfg, const RunContext& ctx);
void run_dynrate(const Config& cfg, const RunContext& ctx);

inline std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot write '" + path.string() + "'");
  return f;
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

inline std::string num(double v) { return io::format_double(v); }

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace gldp::cli
