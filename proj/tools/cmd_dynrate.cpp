#include <cstdio>

#include "commands.hpp"
#include "gldp/rare_events.hpp"
#include "manifest.hpp"
#include "svg.hpp"

namespace gldp::cli {

// Penalized forward searches over a lambda ladder; when the penalty is sent
// up the entropy term approaches the constrained rate from below.
void run_dynrate(const Config& cfg, const RunContext& ctx) {
  KernelSpec kernel = load_kernel(cfg, "kernel");
  CouplingSpec coupling = load_coupling(cfg, "coupling");
  IcConfig ic = load_ic(cfg, "ic");
  std::string observable = cfg.str("observable");
  double target = cfg.num("target");
  std::vector<double> lambdas = cfg.real_ladder("lambdas");

  Config s = cfg.sub("search");
  DynRateSearchConfig sc;
  sc.resolution = s.u32("resolution");
  sc.sim_resolution = s.u32("sim_resolution");
  sc.iterations = s.u32_or("iterations", sc.iterations);
  sc.step = s.num_or("step", sc.step);
  sc.seed = s.u64("seed");
  sc.t_end = s.num("t_end");
  sc.dt = s.num("dt");
  sc.save_every = s.u32_or("save_every", sc.save_every);
  if (sc.sim_resolution == 0 || sc.resolution == 0 ||
      sc.sim_resolution % sc.resolution != 0)
    throw config_error("sim_resolution must be a multiple of resolution");

  StepGraphon w = kernel.at(sc.resolution);
  GridFunction g = ic_state(ic, sc.sim_resolution);

  auto table = open_csv(ctx.out_dir / "dynrate.csv");
  csv_row(table, {"lambda", "upsilon", "penalty", "cost", "observable",
                  "converged", "best_v_file"});
  Series ups{"upsilon", {}}, cost{"cost", {}};
  std::vector<std::string> outputs{"dynrate.csv"};
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    sc.lambda = lambdas[i];
    DynRateResult res = dynamical_rate_search(w, g, coupling, observable,
                                              target, sc, ctx.threads);
    char name[32];
    std::snprintf(name, sizeof name, "best_v_%02zu.csv", i);
    io::write_graphon(ctx.out_dir / name, res.best_v);
    outputs.push_back(name);
    csv_row(table, {num(sc.lambda), num(res.upsilon_term),
                    num(res.penalty_term), num(res.cost),
                    num(res.observable), res.converged ? "1" : "0", name});
    ups.points.emplace_back(sc.lambda, res.upsilon_term);
    cost.points.emplace_back(sc.lambda, res.cost);
  }

  if (cfg.flag_or("plots", false)) {
    write_line_plot(ctx.out_dir / "dynrate.svg", "penalized search", "lambda",
                    "value", {ups, cost});
    outputs.push_back("dynrate.svg");
  }

  nlohmann::json seeds;
  seeds["search"] = sc.seed;
  if (!ic.from_file && !ic.deterministic) seeds["ic"] = ic.spec.seed;
  write_manifest(ctx, "dynrate", cfg, seeds, outputs);
}

}  // namespace gldp::cli
