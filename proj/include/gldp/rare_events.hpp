#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "gldp/dynamics.hpp"
#include "gldp/graphon.hpp"
#include "gldp/norms.hpp"
#include "gldp/sampling.hpp"

namespace gldp {

struct RareEventEstimate {
  double p_hat = 0.0;
  double log_p_per_n2 = 0.0;  // -(1/n^2) log p_hat
  double std_err = 0.0;       // weight-based standard error of p_hat
  uint64_t replicas = 0;
  // event description
  uint32_t n = 0;
  double delta = 0.0;
  std::string norm_mode;
  bool clipped = false;    // p_hat exceeded 1 and was clipped
  bool zero_hits = false;  // no replica landed in the event
};

// Importance-sampling estimate of P(d_inf_one(embed(X), V^n) <= delta)
// under the W-measure, sampling X from the tilted V-measure.  The event
// predicate runs the selected norm mode with the frozen heuristic
// configuration, so it is a deterministic function of the bits.  Replica r
// uses the derived seed replica_seed(seed, r); the reduction over replicas
// is a fixed-order sum over the replica index, so the estimate does not
// depend on the worker count.
RareEventEstimate estimate_rare_event(const StepGraphon& w,
                                      const StepGraphon& v_target, uint32_t n,
                                      double delta, NormMode norm_mode,
                                      const HeuristicConfig& frozen,
                                      uint64_t replicas, uint64_t seed,
                                      unsigned threads = 1);

// Exhaustive probability of a predicate under independent Bernoulli(W_ij)
// bits; n <= 3 (at most 512 outcomes).
double exact_event_probability(
    const StepGraphon& wn,
    const std::function<bool(const AdjacencyGraph&)>& predicate);

// Scalar functionals of a trajectory: terminal_l2, terminal_mean,
// order_parameter (modulus of the mean phase factor at the final time).
double eval_observable(const std::string& name, const Trajectory& traj);

struct DynRateSearchConfig {
  uint32_t resolution = 2;       // kernel resolution of the search variable
  uint32_t sim_resolution = 16;  // Galerkin resolution (multiple of it)
  uint32_t iterations = 40;
  double step = 0.05;
  double lambda = 50.0;
  uint64_t seed = 0;
  double t_end = 1.0;
  double dt = 1e-2;
  uint32_t save_every = 10;
};

struct DynRateResult {
  StepGraphon best_v;
  double upsilon_term = 0.0;
  double penalty_term = 0.0;
  double cost = 0.0;
  double observable = 0.0;
  Trajectory trajectory;
  bool converged = false;
};

// Penalized forward search for the dynamical rate: coordinate descent over
// step kernels V at the search resolution, minimizing
//   upsilon(V, W^r) + lambda (observable(F(V, g)) - target)^2
// where F simulates the Galerkin system with V refined to the simulation
// resolution.  The result is an upper bound with witnesses.
DynRateResult dynamical_rate_search(const StepGraphon& w,
                                    const GridFunction& g,
                                    const CouplingSpec& coupling,
                                    const std::string& observable,
                                    double target,
                                    const DynRateSearchConfig& cfg,
                                    unsigned threads = 1);

}  // namespace gldp
