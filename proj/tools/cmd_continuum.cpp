#include "commands.hpp"
#include "gldp/dynamics.hpp"
#include "gldp/parallel.hpp"
#include "gldp/rng.hpp"
#include "gldp/sampling.hpp"
#include "manifest.hpp"
#include "svg.hpp"

namespace gldp::cli {

// Adjacency-driven runs at each ladder resolution against one deterministic
// continuum reference.  The initial datum must be a fixed function so that
// every resolution discretizes the same continuum problem.
void run_continuum(const Config& cfg, const RunContext& ctx) {
  KernelSpec kernel = load_kernel(cfg, "kernel");
  CouplingSpec coupling = load_coupling(cfg, "coupling");
  IcConfig ic = load_ic(cfg, "ic");
  if (!ic.deterministic)
    throw config_error("continuum runs need ic kind 'function'");
  std::vector<uint32_t> ladder = cfg.ladder("resolutions");
  uint32_t reference = cfg.u32("reference");
  if (reference <= ladder.back())
    throw config_error("'reference' must exceed the ladder");
  uint32_t replicas = cfg.u32("replicas");
  uint64_t seed = cfg.u64("seed");
  double T = cfg.num("T");
  double dt = cfg.num("dt");
  uint32_t save_every = cfg.u32_or("save_every", 1);
  if (coupling.f_name == "frequency")
    throw config_error("frequency intrinsics are not supported here");

  Trajectory ref =
      kernel.analytic
          ? solve_continuum(kernel.fn, ic.fn, coupling, reference, T, dt,
                            save_every, ctx.threads)
          : solve_continuum(kernel.step, ic.fn, coupling, reference, T, dt,
                            save_every, ctx.threads);

  auto table = open_csv(ctx.out_dir / "continuum.csv");
  csv_row(table, {"n", "replica", "seed", "distance"});
  auto summary = open_csv(ctx.out_dir / "continuum_summary.csv");
  csv_row(summary, {"n", "median", "mean", "max"});

  Series med{"median", {}};
  for (uint32_t n : ladder) {
    StepGraphon wn = kernel.at(n);
    GridFunction g = grid_from_function(ic.fn, n);
    std::vector<double> dist(replicas);
    parallel_for(replicas, ctx.threads, [&](std::size_t r) {
      AdjacencyGraph a =
          sample_w_random(wn, replica_seed2(seed, n, r), true);
      Trajectory traj =
          simulate(embed(a), g, nullptr, coupling, T, dt, save_every);
      dist[r] = trajectory_distance(traj, ref);
    });
    double mean = 0.0, worst = 0.0;
    for (uint32_t r = 0; r < replicas; ++r) {
      csv_row(table, {std::to_string(n), std::to_string(r),
                      std::to_string(replica_seed2(seed, n, r)),
                      num(dist[r])});
      mean += dist[r];
      worst = std::max(worst, dist[r]);
    }
    mean /= replicas;
    double median = median_of(dist);
    csv_row(summary,
            {std::to_string(n), num(median), num(mean), num(worst)});
    med.points.emplace_back(n, median);
  }

  std::vector<std::string> outputs{"continuum.csv", "continuum_summary.csv"};
  if (cfg.flag_or("plots", false)) {
    write_line_plot(ctx.out_dir / "continuum.svg",
                    "distance to the continuum reference", "n",
                    "median distance", {med}, true);
    outputs.push_back("continuum.svg");
  }

  nlohmann::json seeds;
  seeds["base"] = seed;
  seeds["derivation"] = "replica_seed2(seed, n, replica)";
  write_manifest(ctx, "continuum", cfg, seeds, outputs);
}

}  // namespace gldp::cli
