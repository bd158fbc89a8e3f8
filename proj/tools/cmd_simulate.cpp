#include "commands.hpp"
#include "gldp/dynamics.hpp"
#include "gldp/sampling.hpp"
#include "manifest.hpp"
#include "svg.hpp"

namespace gldp::cli {

void run_simulate(const Config& cfg, const RunContext& ctx) {
  KernelSpec kernel = load_kernel(cfg, "kernel");
  uint32_t n = cfg.u32("n");
  CouplingSpec coupling = load_coupling(cfg, "coupling");
  IcConfig ic = load_ic(cfg, "ic");
  double T = cfg.num("T");
  double dt = cfg.num("dt");
  uint32_t save_every = cfg.u32_or("save_every", 1);
  std::string mode = cfg.str_or("mode", "galerkin");

  StepGraphon wn = kernel.at(n);
  StepGraphon drive = wn;
  nlohmann::json seeds;
  if (mode == "sample") {
    uint64_t s = cfg.u64("sample_seed");
    drive = embed(sample_w_random(wn, s, cfg.flag_or("directed", true)));
    seeds["sample"] = s;
  } else if (mode != "galerkin") {
    throw config_error("mode must be 'galerkin' or 'sample'");
  }

  GridFunction g = ic_state(ic, n);
  GridFunction params;
  const GridFunction* params_ptr = nullptr;
  if (coupling.f_name == "frequency") {
    params = load_params(cfg, "params", n);
    params_ptr = &params;
  }
  if (!ic.from_file && !ic.deterministic) seeds["ic"] = ic.spec.seed;

  Trajectory traj =
      simulate(drive, g, params_ptr, coupling, T, dt, save_every, ctx.threads);

  io::write_trajectory(ctx.out_dir / "trajectory.csv", traj);
  io::write_gridfn(ctx.out_dir / "ic.csv", g);
  io::write_graphon(ctx.out_dir / "kernel.csv", drive);
  std::vector<std::string> outputs{"trajectory.csv", "ic.csv", "kernel.csv"};
  if (params_ptr) {
    io::write_gridfn(ctx.out_dir / "params.csv", params);
    outputs.push_back("params.csv");
  }

  if (cfg.flag_or("plots", false)) {
    std::vector<Series> series;
    uint32_t shown = std::min(n, 8u);
    for (uint32_t i = 0; i < shown; ++i) {
      Series s{"u_" + std::to_string(i + 1), {}};
      for (std::size_t t = 0; t < traj.times.size(); ++t)
        s.points.emplace_back(traj.times[t], traj.states[t].values[i]);
      series.push_back(std::move(s));
    }
    write_line_plot(ctx.out_dir / "trajectory.svg", "node trajectories", "t",
                    "u", series);
    outputs.push_back("trajectory.svg");
  }

  write_manifest(ctx, "simulate", cfg, seeds, outputs);
}

}  // namespace gldp::cli
