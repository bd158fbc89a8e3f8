#include <cmath>

#include "commands.hpp"
#include "gldp/norms.hpp"
#include "gldp/parallel.hpp"
#include "gldp/rng.hpp"
#include "gldp/sampling.hpp"
#include "manifest.hpp"
#include "svg.hpp"

namespace gldp::cli {

// lln: dense W-random ladder, distance of the embedded sample to W^n.
// sparse-lln: alpha_n = n^{-alpha_exponent}, rescaled embedding.
void run_lln(const Config& cfg, const RunContext& ctx, bool sparse) {
  KernelSpec kernel = load_kernel(cfg, "kernel");
  std::vector<uint32_t> ladder = cfg.ladder("resolutions");
  uint32_t replicas = cfg.u32("replicas");
  uint64_t seed = cfg.u64("seed");
  HeuristicConfig hc = load_heuristic(cfg);
  double exponent = sparse ? cfg.num("alpha_exponent") : 0.0;
  if (sparse && (exponent <= 0.0 || exponent >= 0.5))
    throw config_error("alpha_exponent must lie in (0, 0.5)");

  const char* table_name = sparse ? "sparse_lln.csv" : "lln.csv";
  auto table = open_csv(ctx.out_dir / table_name);
  if (sparse)
    csv_row(table, {"n", "replica", "seed", "alpha", "distance"});
  else
    csv_row(table, {"n", "replica", "seed", "distance"});

  const char* summary_name =
      sparse ? "sparse_lln_summary.csv" : "lln_summary.csv";
  auto summary = open_csv(ctx.out_dir / summary_name);
  csv_row(summary, {"n", "median", "mean", "max"});

  Series med{"median", {}};
  for (uint32_t n : ladder) {
    StepGraphon wn = kernel.at(n);
    double alpha = sparse ? std::pow(double(n), -exponent) : 1.0;
    std::vector<double> dist(replicas);
    parallel_for(replicas, ctx.threads, [&](std::size_t r) {
      uint64_t rs = replica_seed2(seed, n, r);
      AdjacencyGraph g = sparse ? sample_sparse(wn, alpha, rs)
                                : sample_w_random(wn, rs, true);
      NormMode mode =
          n <= kExactNormCap ? NormMode::exact : NormMode::heuristic;
      dist[r] = d_inf_one(embed(g, sparse), wn, mode, hc).value;
    });
    double mean = 0.0, worst = 0.0;
    for (uint32_t r = 0; r < replicas; ++r) {
      if (sparse)
        csv_row(table, {std::to_string(n), std::to_string(r),
                        std::to_string(replica_seed2(seed, n, r)),
                        num(alpha), num(dist[r])});
      else
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

  std::vector<std::string> outputs{table_name, summary_name};
  if (cfg.flag_or("plots", false)) {
    const char* plot_name = sparse ? "sparse_lln.svg" : "lln.svg";
    write_line_plot(ctx.out_dir / plot_name, "sample-to-kernel distance", "n",
                    "median distance", {med});
    outputs.push_back(plot_name);
  }

  nlohmann::json seeds;
  seeds["base"] = seed;
  seeds["heuristic"] = hc.seed;
  seeds["derivation"] = "replica_seed2(seed, n, replica)";
  write_manifest(ctx, sparse ? "sparse-lln" : "lln", cfg, seeds, outputs);
}

}  // namespace gldp::cli
