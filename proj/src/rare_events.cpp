#include "gldp/rare_events.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gldp/common.hpp"
#include "gldp/parallel.hpp"
#include "gldp/rates.hpp"
#include "gldp/rng.hpp"

namespace gldp {

RareEventEstimate estimate_rare_event(const StepGraphon& w,
                                      const StepGraphon& v_target, uint32_t n,
                                      double delta, NormMode norm_mode,
                                      const HeuristicConfig& frozen,
                                      uint64_t replicas, uint64_t seed,
                                      unsigned threads) {
  require(replicas >= 2, "need at least two replicas");
  require(delta >= 0.0, "event radius must be nonnegative");
  StepGraphon wn = project(w, n);
  StepGraphon vn = project(v_target, n);

  std::vector<double> weights(replicas, 0.0);
  parallel_for(replicas, threads, [&](std::size_t r) {
    TiltedSample ts = sample_tilted(vn, wn, replica_seed(seed, r));
    NormResult d = d_inf_one(embed(ts.graph), vn, norm_mode, frozen);
    if (d.value <= delta && ts.log_weight > -kInf)
      weights[r] = std::exp(ts.log_weight);
  });

  // fixed-order reduction over the replica index
  double sum = 0.0, sumsq = 0.0;
  for (double x : weights) {
    sum += x;
    sumsq += x * x;
  }
  double r = double(replicas);
  RareEventEstimate est;
  est.replicas = replicas;
  est.n = n;
  est.delta = delta;
  est.norm_mode = norm_mode == NormMode::exact ? "exact" : "heuristic";
  est.p_hat = sum / r;
  double var = std::max(0.0, (sumsq - sum * sum / r) / (r - 1.0));
  est.std_err = std::sqrt(var / r);
  if (est.p_hat > 1.0) {
    est.p_hat = 1.0;
    est.clipped = true;
  }
  if (est.p_hat == 0.0) {
    est.zero_hits = true;
    est.log_p_per_n2 = kInf;
  } else {
    est.log_p_per_n2 = -std::log(est.p_hat) / (double(n) * n);
  }
  return est;
}

double exact_event_probability(
    const StepGraphon& wn,
    const std::function<bool(const AdjacencyGraph&)>& predicate) {
  uint32_t n = wn.n;
  require(n <= 3, "exhaustive enumeration needs n <= 3");
  require(wn.bound == 1.0, "enumeration needs a bound-1 kernel");
  uint32_t cells = n * n;
  AdjacencyGraph g(n, true, 1.0, 0, "enumerated");
  double total = 0.0;
  for (uint64_t mask = 0; mask < (uint64_t(1) << cells); ++mask) {
    double p = 1.0;
    for (uint32_t c = 0; c < cells; ++c) {
      bool bit = (mask >> c) & 1;
      g.bits[c] = bit ? 1 : 0;
      double wv = wn.values[c];
      p *= bit ? wv : 1.0 - wv;
    }
    if (p > 0.0 && predicate(g)) total += p;
  }
  return total;
}

double eval_observable(const std::string& name, const Trajectory& traj) {
  const auto& u = traj.states.back().values;
  double n = double(u.size());
  if (name == "terminal_l2") {
    double acc = 0.0;
    for (double x : u) acc += x * x;
    return std::sqrt(acc / n);
  }
  if (name == "terminal_mean") {
    double acc = 0.0;
    for (double x : u) acc += x;
    return acc / n;
  }
  if (name == "order_parameter") {
    double c = 0.0, s = 0.0;
    for (double x : u) {
      c += std::cos(2.0 * std::numbers::pi * x);
      s += std::sin(2.0 * std::numbers::pi * x);
    }
    return std::sqrt(c * c + s * s) / n;
  }
  throw format_error("unknown observable '" + name + "'");
}

namespace {

constexpr double kClip = 1e-3;  // search kernels stay in [kClip, 1 - kClip]

struct SearchState {
  const StepGraphon* w_coarse;
  const GridFunction* g;
  const CouplingSpec* coupling;
  const DynRateSearchConfig* cfg;
  std::string observable;
  double target;
  unsigned threads;

  struct Eval {
    double upsilon_term;
    double penalty;
    double observable;
    double cost;
  };

  Eval score(const StepGraphon& v, Trajectory* out_traj = nullptr) const {
    StepGraphon vm = refine_graphon(v, cfg->sim_resolution);
    Trajectory traj = simulate(vm, *g, nullptr, *coupling, cfg->t_end,
                               cfg->dt, cfg->save_every, threads);
    double obs = eval_observable(observable, traj);
    double ups = upsilon(v, *w_coarse).value;
    double gap = obs - target;
    Eval e{ups, cfg->lambda * gap * gap, obs, 0.0};
    e.cost = e.upsilon_term + e.penalty;
    if (out_traj) *out_traj = std::move(traj);
    return e;
  }
};

}  // namespace

DynRateResult dynamical_rate_search(const StepGraphon& w,
                                    const GridFunction& g,
                                    const CouplingSpec& coupling,
                                    const std::string& observable,
                                    double target,
                                    const DynRateSearchConfig& cfg,
                                    unsigned threads) {
  require(cfg.resolution >= 1, "search resolution must be >= 1");
  require(cfg.sim_resolution % cfg.resolution == 0,
          "simulation resolution must be a multiple of the search one");
  require(g.n == cfg.sim_resolution,
          "initial data must be at the simulation resolution");
  require(coupling.f_name != "frequency",
          "the search covers deterministic intrinsic dynamics only");
  require(cfg.lambda >= 0.0 && cfg.step > 0.0, "bad search parameters");

  StepGraphon w_coarse = project(w, cfg.resolution);
  SearchState st{&w_coarse, &g,     &coupling, &cfg,
                 observable, target, threads};

  StepGraphon v = clamp_graphon(w_coarse, kClip);
  SearchState::Eval cur = st.score(v);
  double step = cfg.step;
  bool converged = false;

  for (uint32_t iter = 0; iter < cfg.iterations; ++iter) {
    bool moved = false;
    for (std::size_t c = 0; c < v.values.size(); ++c) {
      double base = v.values[c];
      for (double cand : {base + step, base - step}) {
        cand = std::min(std::max(cand, kClip), 1.0 - kClip);
        if (cand == base) continue;
        StepGraphon trial = v;
        trial.values[c] = cand;
        SearchState::Eval e = st.score(trial);
        if (e.cost < cur.cost - 1e-14) {
          v = std::move(trial);
          cur = e;
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      step *= 0.5;
      if (step < 1e-4) {
        converged = true;
        break;
      }
    }
  }

  DynRateResult res{v, 0.0, 0.0, 0.0, 0.0, {}, converged};
  Trajectory traj;
  SearchState::Eval fin = st.score(v, &traj);
  res.upsilon_term = fin.upsilon_term;
  res.penalty_term = fin.penalty;
  res.cost = fin.cost;
  res.observable = fin.observable;
  res.trajectory = std::move(traj);
  return res;
}

}  // namespace gldp
