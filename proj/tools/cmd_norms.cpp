#include "commands.hpp"
#include "gldp/norms.hpp"
#include "manifest.hpp"
#include "svg.hpp"

namespace gldp::cli {

void run_norms(const Config& cfg, const RunContext& ctx) {
  KernelSpec u = load_kernel(cfg, "u");
  KernelSpec v = load_kernel(cfg, "v");
  std::vector<uint32_t> ladder = cfg.ladder("resolutions");
  HeuristicConfig hc = load_heuristic(cfg);

  auto table = open_csv(ctx.out_dir / "norms.csv");
  csv_row(table, {"n", "cut", "inf_one", "ratio", "mode"});
  Series cut_series{"cut", {}}, inf_series{"inf_one", {}};
  for (uint32_t n : ladder) {
    SignedStepKernel d = kernel_difference(u.at(n), v.at(n));
    NormMode mode =
        d.n <= kExactNormCap ? NormMode::exact : NormMode::heuristic;
    double cut = cut_norm(d, mode, hc).value;
    double inf = inf_one_norm(d, mode, hc).value;
    std::string ratio = cut > 0.0 ? num(inf / cut) : "";
    csv_row(table, {std::to_string(n), num(cut), num(inf), ratio,
                    mode == NormMode::exact ? "exact" : "heuristic"});
    cut_series.points.emplace_back(n, cut);
    inf_series.points.emplace_back(n, inf);
  }
  std::vector<std::string> outputs{"norms.csv"};
  if (cfg.flag_or("plots", false)) {
    write_line_plot(ctx.out_dir / "norms.svg", "distance vs resolution", "n",
                    "distance", {cut_series, inf_series});
    outputs.push_back("norms.svg");
  }

  nlohmann::json seeds;
  seeds["heuristic"] = hc.seed;
  write_manifest(ctx, "norms", cfg, seeds, outputs);
}

}  // namespace gldp::cli
