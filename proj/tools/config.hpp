#pragma once

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gldp/dynamics.hpp"
#include "gldp/graphon.hpp"
#include "gldp/norms.hpp"
#include "gldp/sampling.hpp"

namespace gldp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitConfig = 65;
inline constexpr int kExitMissingFile = 66;
inline constexpr int kExitInternal = 70;

// Schema or value problems in a config file (exit 65, distinct from missing
// files at 66 and runtime failures at 70).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct RunContext {
  std::filesystem::path out_dir;
  unsigned threads = 1;
};

// Thin typed view over the parsed JSON.  Relative paths inside the config
// resolve against the config file's directory.
struct Config {
  nlohmann::json j;
  std::filesystem::path base;

  static Config load(const std::filesystem::path& file);

  bool has(const std::string& key) const { return j.contains(key); }
  const nlohmann::json& at(const std::string& key) const;

  std::string str(const std::string& key) const;
  std::string str_or(const std::string& key, const std::string& def) const;
  double num(const std::string& key) const;
  double num_or(const std::string& key, double def) const;
  uint64_t u64(const std::string& key) const;
  uint64_t u64_or(const std::string& key, uint64_t def) const;
  uint32_t u32(const std::string& key) const;
  uint32_t u32_or(const std::string& key, uint32_t def) const;
  bool flag_or(const std::string& key, bool def) const;
  std::vector<double> numbers(const std::string& key) const;
  // strictly increasing positive integer ladder
  std::vector<uint32_t> ladder(const std::string& key) const;
  // strictly increasing real ladder
  std::vector<double> real_ladder(const std::string& key) const;
  Config sub(const std::string& key) const;

  std::filesystem::path resolve(const std::string& rel) const;
};

// Kernel specification: either a registry string ("constant:<c>", "product",
// "er:<p>") or {"file": "<graphon csv>"}.
struct KernelSpec {
  std::string id;
  bool analytic = false;
  AnalyticKernel fn;
  StepGraphon step;

  StepGraphon at(uint32_t n) const;
};

KernelSpec load_kernel(const Config& c, const std::string& key);

CouplingSpec load_coupling(const Config& c, const std::string& key);

// Initial data specification:
//   {"kind": "function", "name": "zero|x|centered|sine", "scale": s}
//   {"kind": "gridfn", "file": "g.csv"}
//   {"kind": "lipschitz", "m": M, "seed": s}
//   {"kind": "convolved", "atoms": [...], "probs": [...], "rho": r, "seed": s}
struct IcConfig {
  IcSpec spec;
  bool from_file = false;
  GridFunction file_grid;
  bool deterministic = false;
  std::function<double(double)> fn;  // set when deterministic
};

IcConfig load_ic(const Config& c, const std::string& key);
GridFunction ic_state(const IcConfig& ic, uint32_t n);

// Node parameters: {"file": ...} or {"atoms": [...], "probs": [...],
// "seed": s, "rho": r}.
GridFunction load_params(const Config& c, const std::string& key, uint32_t n);

HeuristicConfig load_heuristic(const Config& c);

}  // namespace gldp::cli
