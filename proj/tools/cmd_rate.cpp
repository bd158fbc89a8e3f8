#include "commands.hpp"
#include "gldp/rates.hpp"
#include "manifest.hpp"

namespace gldp::cli {

// One table, sections in fixed order: upsilon / quotient / sparse over the
// resolution ladder, then ell at sample points, then the Legendre rate of a
// finite law at target levels.
void run_rate(const Config& cfg, const RunContext& ctx) {
  auto table = open_csv(ctx.out_dir / "rate.csv");
  csv_row(table, {"section", "param", "value", "mode"});

  auto mode_name = [](RateMode m) {
    switch (m) {
      case RateMode::exact: return "exact";
      case RateMode::heuristic_upper: return "upper";
      default: return "lower";
    }
  };
  auto val = [](double v) { return v == kInf ? std::string("inf") : num(v); };

  bool any = false;
  if (cfg.has("resolutions")) {
    KernelSpec w = load_kernel(cfg, "w");
    KernelSpec v = load_kernel(cfg, "v");
    std::vector<uint32_t> ladder = cfg.ladder("resolutions");
    bool quotient = cfg.flag_or("quotient", false);
    bool sparse = cfg.flag_or("sparse", false);
    HeuristicConfig hc = load_heuristic(cfg);
    for (uint32_t n : ladder) {
      RateReport r = upsilon(v.at(n), w.at(n));
      csv_row(table, {"upsilon", std::to_string(n), val(r.value),
                      mode_name(r.mode)});
    }
    if (quotient)
      for (uint32_t n : ladder) {
        NormMode m =
            n <= kExactQuotientCap ? NormMode::exact : NormMode::heuristic;
        RateReport r = rate_quotient(v.at(n), w.at(n), m, hc);
        csv_row(table, {"quotient", std::to_string(n), val(r.value),
                        mode_name(r.mode)});
      }
    if (sparse)
      for (uint32_t n : ladder) {
        RateReport r = sparse_rate(v.at(n), w.at(n));
        csv_row(table, {"sparse", std::to_string(n), val(r.value),
                        mode_name(r.mode)});
      }
    any = true;
  }

  if (cfg.has("ell_points")) {
    for (double z : cfg.real_ladder("ell_points")) {
      if (z < 0.0) throw config_error("ell is defined on [0, inf)");
      csv_row(table, {"ell", num(z), val(poisson_ell(z)), "exact"});
    }
    any = true;
  }

  if (cfg.has("legendre")) {
    Config s = cfg.sub("legendre");
    FiniteLaw mu = [&] {
      try {
        return FiniteLaw(s.numbers("atoms"), s.numbers("probs"));
      } catch (const domain_error& e) {
        throw config_error(std::string("legendre law: ") + e.what());
      }
    }();
    for (double b : s.real_ladder("targets"))
      csv_row(table, {"legendre", num(b), val(legendre_rate(mu, b)), "exact"});
    any = true;
  }

  if (!any)
    throw config_error(
        "rate needs 'resolutions', 'ell_points', or 'legendre'");

  write_manifest(ctx, "rate", cfg, nlohmann::json::object(), {"rate.csv"});
}

}  // namespace gldp::cli
