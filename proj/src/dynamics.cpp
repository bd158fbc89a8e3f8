#include "gldp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gldp/common.hpp"
#include "gldp/parallel.hpp"
#include "gldp/rng.hpp"

namespace gldp {

CouplingSpec make_coupling(const std::string& f_spec,
                           const std::string& d_name) {
  CouplingSpec c;
  if (f_spec == "zero") {
    c.f_name = "zero";
  } else if (f_spec.rfind("constant_drift:", 0) == 0) {
    c.f_name = "constant_drift";
    std::size_t used = 0;
    std::string arg = f_spec.substr(15);
    double v;
    try {
      v = std::stod(arg, &used);
    } catch (const std::exception&) {
      throw format_error("bad drift value in '" + f_spec + "'");
    }
    require(used == arg.size(), "trailing junk in '" + f_spec + "'");
    require(std::isfinite(v), "drift must be finite");
    c.drift = v;
    c.bound_f = std::fabs(v);
  } else if (f_spec == "frequency") {
    c.f_name = "frequency";
    c.bound_f = kInf;  // resolved from the parameter vector
  } else {
    throw format_error("unknown intrinsic dynamics '" + f_spec + "'");
  }

  if (d_name == "kuramoto") {
    c.d_kind = simd::PairKind::kuramoto;
    c.lip_d = 2.0 * std::numbers::pi;
    c.bound_d = 1.0;
  } else if (d_name == "linear") {
    c.d_kind = simd::PairKind::linear;
    c.lip_d = 1.0;
    c.bound_d = kInf;
    c.bound_exempt = true;
  } else if (d_name == "tanh_diff") {
    c.d_kind = simd::PairKind::tanh_diff;
    c.lip_d = 1.0;
    c.bound_d = 1.0;
  } else {
    throw format_error("unknown pair interaction '" + d_name + "'");
  }
  c.d_name = d_name;
  return c;
}

namespace {

struct RhsContext {
  const StepGraphon* kernel;
  const GridFunction* params;
  const CouplingSpec* coupling;
  uint32_t n;
  unsigned threads;
  std::vector<std::vector<double>> scratch;  // one row buffer per worker

  RhsContext(const StepGraphon& k, const GridFunction* p,
             const CouplingSpec& c, unsigned th)
      : kernel(&k),
        params(p),
        coupling(&c),
        n(k.n),
        threads(std::max(1u, th)),
        scratch(threads, std::vector<double>(k.n)) {}

  // A magnitude bound for the coupling terms that depends on the state only
  // through max|u|, hence is invariant under node relabelings.
  double term_bound(const double* u) const {
    double bk = kernel->bound;
    if (coupling->bound_d != kInf) return bk * coupling->bound_d;
    return bk * 2.0 * simd::ops().max_abs(u, n);
  }

  void eval(const double* u, double t, double* out) {
    (void)t;
    const auto& ops = simd::ops();
    double bound = term_bound(u);
    int scale = simd::accum_scale(bound);
    double p2 = simd::pow2(scale);
    double inv_n = 1.0 / double(n);
    const double* kv = kernel->values.data();
    const CouplingSpec& c = *coupling;
    const double* xi =
        c.f_name == "frequency" ? params->values.data() : nullptr;
    double drift = c.f_name == "constant_drift" ? c.drift : 0.0;
    unsigned workers =
        n >= 64 ? std::min<unsigned>(threads, (n + 63) / 64) : 1;
    parallel_for(n, workers, [&](std::size_t i) {
      double* row = scratch[i % workers].data();
      ops.pair_terms(c.d_kind, u[i], u, kv + i * n, row, n);
      double s = bound == 0.0
                     ? 0.0
                     : simd::i128_to_double(ops.fixed_accum(row, n, p2), scale);
      double f = xi ? xi[i] : drift;
      out[i] = f + s * inv_n;
    });
  }
};

void check_finite(const std::vector<double>& u, double t) {
  for (double v : u)
    if (!std::isfinite(v))
      throw domain_error("state diverged at t = " + std::to_string(t));
}

}  // namespace

Trajectory simulate(const StepGraphon& kernel, const GridFunction& g,
                    const GridFunction* params, const CouplingSpec& coupling,
                    double T, double dt, uint32_t save_every,
                    unsigned threads) {
  uint32_t n = kernel.n;
  require(g.n == n, "kernel and initial data resolutions differ");
  require(T > 0.0 && dt > 0.0, "T and dt must be positive");
  require(save_every >= 1, "save_every must be >= 1");
  if (coupling.f_name == "frequency")
    require(params && params->n == n,
            "frequency dynamics need parameters at the kernel resolution");

  double rate = coupling.lip_f + 2.0 * kernel.bound * coupling.lip_d;
  require(rate == 0.0 || dt <= 0.1 / rate * (1.0 + 1e-12),
          "dt exceeds the stability guard 0.1/(L_f + 2 B L_D)");

  double steps_d = T / dt;
  uint64_t steps = uint64_t(std::llround(steps_d));
  require(steps >= 1 && std::fabs(double(steps) * dt - T) <= 1e-9 * T,
          "T must be an integer number of steps");

  Trajectory traj;
  traj.n = n;
  traj.dt = dt;
  traj.save_every = save_every;
  traj.coupling_id = coupling.id();
  traj.kernel_id = kernel.bound == 1.0 ? "b1" : "rescaled";

  RhsContext rhs(kernel, params, coupling, threads);
  const auto& ops = simd::ops();
  std::vector<double> u = g.values;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n);

  auto save = [&](uint64_t step) {
    traj.times.push_back(double(step) * dt);
    traj.states.emplace_back(n, u);
  };
  save(0);

  for (uint64_t s = 0; s < steps; ++s) {
    double t = double(s) * dt;
    rhs.eval(u.data(), t, k1.data());
    ops.axpby(u.data(), k1.data(), 0.5 * dt, stage.data(), n);
    rhs.eval(stage.data(), t + 0.5 * dt, k2.data());
    ops.axpby(u.data(), k2.data(), 0.5 * dt, stage.data(), n);
    rhs.eval(stage.data(), t + 0.5 * dt, k3.data());
    ops.axpby(u.data(), k3.data(), dt, stage.data(), n);
    rhs.eval(stage.data(), t + dt, k4.data());
    ops.rk4_combine(u.data(), k1.data(), k2.data(), k3.data(), k4.data(),
                    dt / 6.0, n);
    check_finite(u, double(s + 1) * dt);
    if ((s + 1) % save_every == 0 || s + 1 == steps) save(s + 1);
  }
  return traj;
}

Trajectory solve_continuum(const AnalyticKernel& w,
                           const std::function<double(double)>& g,
                           const CouplingSpec& coupling, uint32_t m, double T,
                           double dt, uint32_t save_every, unsigned threads) {
  return simulate(project(w, m), grid_from_function(g, m), nullptr, coupling,
                  T, dt, save_every, threads);
}

Trajectory solve_continuum(const StepGraphon& w,
                           const std::function<double(double)>& g,
                           const CouplingSpec& coupling, uint32_t m, double T,
                           double dt, uint32_t save_every, unsigned threads) {
  return simulate(project(w, m), grid_from_function(g, m), nullptr, coupling,
                  T, dt, save_every, threads);
}

double trajectory_distance(const Trajectory& u, const Trajectory& v) {
  require(u.times.size() == v.times.size(), "trajectories save differently");
  for (std::size_t k = 0; k < u.times.size(); ++k)
    require(std::fabs(u.times[k] - v.times[k]) <= 1e-12,
            "trajectory time grids differ");
  double best = 0.0;
  for (std::size_t k = 0; k < u.states.size(); ++k)
    best = std::max(best, grid_l2_distance(u.states[k], v.states[k]));
  return best;
}

namespace {

// max over time of the L2 distance with u relabeled by sigma.
double relabeled_distance(const Trajectory& u, const Trajectory& v,
                          const std::vector<uint32_t>& sigma) {
  uint32_t n = u.n;
  double worst = 0.0;
  for (std::size_t k = 0; k < u.states.size(); ++k) {
    const auto& a = u.states[k].values;
    const auto& b = v.states[k].values;
    double acc = 0.0;
    for (uint32_t i = 0; i < n; ++i) {
      double d = a[sigma[i]] - b[i];
      acc += d * d;
    }
    worst = std::max(worst, acc);
  }
  return std::sqrt(worst / n);
}

// Swap-descent surrogate: total squared mismatch over all snapshots.
double swap_cost(const std::vector<std::vector<double>>& cost,
                 const std::vector<uint32_t>& sigma) {
  double acc = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) acc += cost[sigma[i]][i];
  return acc;
}

}  // namespace

QuotientTrajectoryResult quotient_trajectory_distance(const Trajectory& u,
                                                      const Trajectory& v,
                                                      uint32_t sweeps,
                                                      uint64_t seed) {
  require(u.n == v.n, "trajectories have different node counts");
  require(u.times.size() == v.times.size(), "trajectories save differently");
  uint32_t n = u.n;

  if (n <= 8) {
    std::vector<uint32_t> sigma(n), best(n);
    for (uint32_t i = 0; i < n; ++i) sigma[i] = i;
    best = sigma;
    double bd = relabeled_distance(u, v, sigma);
    while (std::next_permutation(sigma.begin(), sigma.end())) {
      double d = relabeled_distance(u, v, sigma);
      if (d < bd) {
        bd = d;
        best = sigma;
      }
    }
    return {bd, Permutation(best)};
  }

  // cost[a][i]: squared mismatch of placing node a at slot i, summed over
  // snapshots; the linear assignment objective majorizes none of the max
  // norm, so the final value is re-scored with relabeled_distance.
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < u.states.size(); ++k) {
    const auto& a = u.states[k].values;
    const auto& b = v.states[k].values;
    for (uint32_t p = 0; p < n; ++p)
      for (uint32_t i = 0; i < n; ++i) {
        double d = a[p] - b[i];
        cost[p][i] += d * d;
      }
  }

  std::vector<uint32_t> best;
  double best_surr = kInf;
  for (uint32_t restart = 0; restart <= sweeps; ++restart) {
    std::vector<uint32_t> sigma(n);
    for (uint32_t i = 0; i < n; ++i) sigma[i] = i;
    if (restart == 0) {
      // greedy: match nodes sorted by initial value
      std::vector<uint32_t> au(n), av(n);
      for (uint32_t i = 0; i < n; ++i) au[i] = av[i] = i;
      const auto& a0 = u.states.front().values;
      const auto& b0 = v.states.front().values;
      std::stable_sort(au.begin(), au.end(),
                       [&](uint32_t x, uint32_t y) { return a0[x] < a0[y]; });
      std::stable_sort(av.begin(), av.end(),
                       [&](uint32_t x, uint32_t y) { return b0[x] < b0[y]; });
      for (uint32_t k = 0; k < n; ++k) sigma[av[k]] = au[k];
    } else {
      Rng rng(replica_seed(seed, restart));
      for (uint32_t i = n; i > 1; --i)
        std::swap(sigma[i - 1], sigma[rng.next_below(i)]);
    }
    double cur = swap_cost(cost, sigma);
    bool improved = true;
    while (improved) {
      improved = false;
      for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j) {
          double delta = cost[sigma[i]][j] + cost[sigma[j]][i] -
                         cost[sigma[i]][i] - cost[sigma[j]][j];
          if (delta < -1e-15) {
            std::swap(sigma[i], sigma[j]);
            cur += delta;
            improved = true;
          }
        }
    }
    if (cur < best_surr) {
      best_surr = cur;
      best = sigma;
    }
  }
  return {relabeled_distance(u, v, best), Permutation(best)};
}

bool a_priori_bound_check(const Trajectory& traj, const CouplingSpec& coupling,
                          const GridFunction& g, const GridFunction* params,
                          const StepGraphon& kernel) {
  require(!coupling.bound_exempt && coupling.bound_d != kInf,
          "bound check needs a coupling with finite declared bounds");
  double bf = coupling.bound_f;
  if (coupling.f_name == "frequency") {
    require(params, "frequency dynamics need parameters");
    bf = grid_max_abs(*params);
  }
  double g_inf = grid_max_abs(g);
  double slope = bf + kernel.bound * coupling.bound_d;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    double limit = g_inf + slope * traj.times[k] + 1e-9;
    if (grid_max_abs(traj.states[k]) > limit) return false;
  }
  return true;
}

}  // namespace gldp
