#include <cmath>

#include "commands.hpp"
#include "gldp/rng.hpp"
#include "gldp/staircase.hpp"
#include "manifest.hpp"
#include "svg.hpp"

namespace gldp::cli {

// Runs the construction on random couplings (or one supplied file), audits
// the invariants, and measures the weak distance of coarsened staircase
// pushforwards against the base coupling for each refinement level.
void run_staircase(const Config& cfg, const RunContext& ctx) {
  uint32_t count = cfg.u32_or("count", 0);
  std::vector<std::string> outputs;
  nlohmann::json seeds = nlohmann::json::object();

  std::vector<std::pair<std::string, DiscreteCoupling>> bases;
  if (cfg.has("coupling_file")) {
    bases.emplace_back("file",
                       io::read_coupling(cfg.resolve(cfg.str("coupling_file"))));
  }
  if (count > 0) {
    uint32_t k = cfg.u32("k");
    uint64_t seed = cfg.u64("seed");
    seeds["base"] = seed;
    seeds["derivation"] = "replica_seed(seed, coupling)";
    for (uint32_t c = 0; c < count; ++c)
      bases.emplace_back(std::to_string(c),
                         random_coupling(k, replica_seed(seed, c)));
  }
  if (bases.empty())
    throw config_error("staircase needs 'count' > 0 or 'coupling_file'");

  std::vector<uint32_t> refinements;
  if (cfg.has("refinements")) {
    refinements = cfg.ladder("refinements");
    for (const auto& [label, nu] : bases)
      if (nu.k % (1u << refinements.back()) != 0)
        throw config_error("2^max(refinements) must divide every k");
  }

  auto invariants = open_csv(ctx.out_dir / "staircase_invariants.csv");
  csv_row(invariants,
          {"coupling", "k", "segments", "length_error", "mass_error"});
  auto ladder_csv = open_csv(ctx.out_dir / "staircase_ladder.csv");
  csv_row(ladder_csv, {"coupling", "m", "k_coarse", "weak_distance"});
  outputs.push_back("staircase_invariants.csv");
  outputs.push_back("staircase_ladder.csv");

  std::vector<Series> series;
  for (const auto& [label, nu] : bases) {
    PiecewiseBijection theta = staircase_bijection(nu);
    double total = 0.0;
    for (const Segment& s : theta.segments) total += s.length;
    std::vector<double> blocks = pushforward_blocks(theta, nu.k);
    double mass_err = 0.0;
    for (uint32_t i = 0; i < nu.k; ++i)
      for (uint32_t j = 0; j < nu.k; ++j)
        mass_err = std::max(
            mass_err, std::fabs(blocks[std::size_t(i) * nu.k + j] - nu.at(i, j)));
    csv_row(invariants, {label, std::to_string(nu.k),
                         std::to_string(theta.segments.size()),
                         num(std::fabs(total - 1.0)), num(mass_err)});

    if (label == "file") {
      io::write_bijection(ctx.out_dir / "bijection.csv", theta);
      outputs.push_back("bijection.csv");
    }

    Series s{label, {}};
    for (uint32_t m : refinements) {
      DiscreteCoupling coarse = coarsen_coupling(nu, 1u << m);
      DiscreteCoupling push(nu.k,
                            pushforward_blocks(staircase_bijection(coarse),
                                               nu.k));
      double d = weak_distance(nu, push);
      csv_row(ladder_csv, {label, std::to_string(m),
                           std::to_string(1u << m), num(d)});
      s.points.emplace_back(m, d);
    }
    if (!s.points.empty() && series.size() < 6) series.push_back(std::move(s));
  }

  if (cfg.flag_or("plots", false) && !series.empty()) {
    write_line_plot(ctx.out_dir / "staircase.svg",
                    "weak distance under refinement", "m", "distance", series,
                    true);
    outputs.push_back("staircase.svg");
  }

  write_manifest(ctx, "staircase", cfg, seeds, outputs);
}

}  // namespace gldp::cli
