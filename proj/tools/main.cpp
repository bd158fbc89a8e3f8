#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace fs = std::filesystem;
using namespace gldp;
using namespace gldp::cli;

namespace {

fs::path pick_out_dir(const std::string& flag_out, const Config& cfg) {
  if (!flag_out.empty()) return flag_out;
  if (const char* env = std::getenv("GRAPHON_LDP_OUT"); env && *env)
    return env;
  if (cfg.has("out")) return cfg.resolve(cfg.str("out"));
  return ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for graphon large deviations"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  unsigned threads = 1;

  struct Entry {
    const char* name;
    const char* desc;
  };
  const Entry entries[] = {
      {"sample", "draw W-random graphs"},
      {"norms", "cut and inf->1 distance tables"},
      {"lln", "cut-distance law of large numbers ladder"},
      {"sparse-lln", "sparse ladder with an alpha_n schedule"},
      {"simulate", "integrate the coupled system"},
      {"continuum", "continuum-limit convergence ladder"},
      {"continuity", "solution-map continuity ratio batches"},
      {"ldp-mc", "rare-event probability ladder"},
      {"rate", "rate function tables"},
      {"staircase", "coupling staircase construction diagnostics"},
      {"dynrate", "penalized search for dynamical rates"},
  };
  for (const Entry& e : entries) {
    CLI::App* sc = app.add_subcommand(e.name, e.desc);
    sc->add_option("--config", config_path, "JSON config file")->required();
    sc->add_option("--out", out_dir, "output directory");
    sc->add_option("--threads", threads, "worker threads")
        ->check(CLI::Range(1u, 256u));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Config cfg = Config::load(config_path);
    if (cfg.str("command") != name)
      throw config_error("config command '" + cfg.str("command") +
                         "' does not match subcommand '" + name + "'");
    RunContext ctx{pick_out_dir(out_dir, cfg), threads};
    fs::create_directories(ctx.out_dir);

    if (name == "sample") run_sample(cfg, ctx);
    else if (name == "norms") run_norms(cfg, ctx);
    else if (name == "lln") run_lln(cfg, ctx, false);
    else if (name == "sparse-lln") run_lln(cfg, ctx, true);
    else if (name == "simulate") run_simulate(cfg, ctx);
    else if (name == "continuum") run_continuum(cfg, ctx);
    else if (name == "continuity") run_continuity(cfg, ctx);
    else if (name == "ldp-mc") run_ldp_mc(cfg, ctx);
    else if (name == "rate") run_rate(cfg, ctx);
    else if (name == "staircase") run_staircase(cfg, ctx);
    else if (name == "dynrate") run_dynrate(cfg, ctx);
    return kExitOk;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitMissingFile;
  } catch (const format_error& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
