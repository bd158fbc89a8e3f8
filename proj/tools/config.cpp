#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "gldp/common.hpp"
#include "gldp/io.hpp"

namespace gldp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

Config Config::load(const fs::path& file) {
  std::ifstream f(file);
  if (!f) throw io_error("cannot open config '" + file.string() + "'");
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw config_error("config '" + file.string() + "': " + e.what());
  }
  if (!j.is_object()) throw config_error("config root must be an object");
  return Config{std::move(j), file.has_parent_path() ? file.parent_path()
                                                     : fs::path(".")};
}

const json& Config::at(const std::string& key) const {
  auto it = j.find(key);
  if (it == j.end()) throw config_error("missing config key '" + key + "'");
  return *it;
}

std::string Config::str(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_string()) throw config_error("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::string Config::str_or(const std::string& key,
                           const std::string& def) const {
  return has(key) ? str(key) : def;
}

double Config::num(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_number()) throw config_error("'" + key + "' must be a number");
  return v.get<double>();
}

double Config::num_or(const std::string& key, double def) const {
  return has(key) ? num(key) : def;
}

uint64_t Config::u64(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<int64_t>() < 0))
    throw config_error("'" + key + "' must be a nonnegative integer");
  return v.get<uint64_t>();
}

uint64_t Config::u64_or(const std::string& key, uint64_t def) const {
  return has(key) ? u64(key) : def;
}

uint32_t Config::u32(const std::string& key) const {
  uint64_t v = u64(key);
  if (v > 0xffffffffull) throw config_error("'" + key + "' is too large");
  return uint32_t(v);
}

uint32_t Config::u32_or(const std::string& key, uint32_t def) const {
  return has(key) ? u32(key) : def;
}

bool Config::flag_or(const std::string& key, bool def) const {
  if (!has(key)) return def;
  const json& v = at(key);
  if (!v.is_boolean()) throw config_error("'" + key + "' must be a boolean");
  return v.get<bool>();
}

std::vector<double> Config::numbers(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_array() || v.empty())
    throw config_error("'" + key + "' must be a nonempty array");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number())
      throw config_error("'" + key + "' must contain numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<uint32_t> Config::ladder(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_array() || v.empty())
    throw config_error("'" + key + "' must be a nonempty array");
  std::vector<uint32_t> out;
  for (const json& x : v) {
    if (!x.is_number_integer() || x.get<int64_t>() <= 0)
      throw config_error("'" + key + "' must contain positive integers");
    out.push_back(x.get<uint32_t>());
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      throw config_error("'" + key + "' must be strictly increasing");
  return out;
}

std::vector<double> Config::real_ladder(const std::string& key) const {
  std::vector<double> out = numbers(key);
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      throw config_error("'" + key + "' must be strictly increasing");
  return out;
}

Config Config::sub(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_object()) throw config_error("'" + key + "' must be an object");
  return Config{v, base};
}

fs::path Config::resolve(const std::string& rel) const {
  fs::path p(rel);
  return p.is_absolute() ? p : base / p;
}

StepGraphon KernelSpec::at(uint32_t n) const {
  return analytic ? project(fn, n) : project(step, n);
}

KernelSpec load_kernel(const Config& c, const std::string& key) {
  const json& v = c.at(key);
  KernelSpec spec;
  if (v.is_string()) {
    spec.id = v.get<std::string>();
    spec.analytic = true;
    try {
      spec.fn = make_analytic_kernel(spec.id);
    } catch (const domain_error& e) {
      throw config_error("'" + key + "': " + e.what());
    }
    return spec;
  }
  if (v.is_object() && v.contains("file") && v["file"].is_string()) {
    std::string file = v["file"].get<std::string>();
    spec.id = file;
    spec.analytic = false;
    spec.step = io::read_graphon(c.resolve(file));
    return spec;
  }
  throw config_error("'" + key +
                     "' must be a registry string or {\"file\": path}");
}

CouplingSpec load_coupling(const Config& c, const std::string& key) {
  Config s = c.sub(key);
  try {
    return make_coupling(s.str("f"), s.str("d"));
  } catch (const domain_error& e) {
    throw config_error("'" + key + "': " + e.what());
  }
}

namespace {

std::function<double(double)> named_function(const std::string& name,
                                             double scale) {
  if (name == "zero") return [](double) { return 0.0; };
  if (name == "x") return [scale](double x) { return scale * x; };
  if (name == "centered")
    return [scale](double x) { return scale * (x - 0.5); };
  if (name == "sine")
    return [scale](double x) {
      return scale * std::sin(2.0 * std::numbers::pi * x);
    };
  throw config_error("unknown ic function '" + name + "'");
}

FiniteLaw load_law(const Config& s) {
  try {
    return FiniteLaw(s.numbers("atoms"), s.numbers("probs"));
  } catch (const domain_error& e) {
    throw config_error(std::string("finite law: ") + e.what());
  }
}

}  // namespace

IcConfig load_ic(const Config& c, const std::string& key) {
  Config s = c.sub(key);
  std::string kind = s.str("kind");
  IcConfig ic;
  if (kind == "function") {
    ic.deterministic = true;
    ic.fn = named_function(s.str("name"), s.num_or("scale", 1.0));
    ic.spec = deterministic_ic(ic.fn);
  } else if (kind == "gridfn") {
    ic.from_file = true;
    ic.file_grid = io::read_gridfn(s.resolve(s.str("file")));
    ic.spec = deterministic_ic([](double) { return 0.0; });
  } else if (kind == "lipschitz") {
    ic.spec = lipschitz_ic(s.num("m"), s.u64("seed"));
  } else if (kind == "convolved") {
    ic.spec = convolved_ic(load_law(s), s.num_or("rho", 0.05), s.u64("seed"));
  } else {
    throw config_error("unknown ic kind '" + kind + "'");
  }
  return ic;
}

GridFunction ic_state(const IcConfig& ic, uint32_t n) {
  if (ic.from_file) {
    const GridFunction& f = ic.file_grid;
    if (f.n == n) return f;
    if (n % f.n == 0) return refine_grid(f, n);
    if (f.n % n == 0) return coarsen_grid(f, n);
    throw config_error("gridfn resolution does not match the run");
  }
  return make_initial_condition(ic.spec, n).coarse;
}

GridFunction load_params(const Config& c, const std::string& key, uint32_t n) {
  Config s = c.sub(key);
  if (s.has("file")) {
    GridFunction f = io::read_gridfn(s.resolve(s.str("file")));
    if (f.n != n) throw config_error("params resolution does not match");
    return f;
  }
  return make_parameters(load_law(s), n, s.u64("seed"),
                         s.num_or("rho", 0.05));
}

HeuristicConfig load_heuristic(const Config& c) {
  HeuristicConfig cfg;
  cfg.restarts = c.u32_or("restarts", cfg.restarts);
  cfg.seed = c.u64_or("heuristic_seed", cfg.seed);
  return cfg;
}

}  // namespace gldp::cli
