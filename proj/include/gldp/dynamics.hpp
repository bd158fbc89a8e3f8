#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gldp/graphon.hpp"
#include "gldp/grid.hpp"
#include "gldp/simd/kernels.hpp"

namespace gldp {

// Intrinsic dynamics f and pair interaction D, with declared Lipschitz
// constants and sup bounds.  The `linear` interaction is unbounded and
// therefore exempt from a priori bound checks; it exists because it has
// closed-form solutions.
struct CouplingSpec {
  std::string f_name;  // zero | constant_drift | frequency
  double drift = 0.0;
  std::string d_name;  // kuramoto | linear | tanh_diff
  simd::PairKind d_kind = simd::PairKind::linear;
  double lip_f = 0.0;
  double lip_d = 0.0;
  double bound_f = 0.0;  // kInf sentinel: depends on parameters (frequency)
  double bound_d = 0.0;  // kInf for linear
  bool bound_exempt = false;

  std::string id() const { return f_name + "+" + d_name; }
};

// f_spec: "zero", "constant_drift:<c>", or "frequency" (f = xi_i, needs a
// parameter vector at simulation time).
CouplingSpec make_coupling(const std::string& f_spec,
                           const std::string& d_name);

struct Trajectory {
  uint32_t n = 0;
  double dt = 0.0;
  uint32_t save_every = 1;
  std::string coupling_id;
  std::string kernel_id;
  std::vector<double> times;
  std::vector<GridFunction> states;
};

// Fixed-step RK4 on u_i' = f(u_i, xi_i, t) + (1/n) sum_j K_ij D(u_i, u_j).
// Adjacency-driven runs pass embed(sample); the Galerkin scheme passes a
// projected kernel; both are the same code path.  Requires
// dt <= 0.1 / (L_f + 2 B L_D) and an integer number of steps to T.
// Coupling sums are accumulated in fixed point with a permutation-invariant
// scale, so permuting kernel and data permutes the trajectory bitwise and
// the result does not depend on the worker count.
Trajectory simulate(const StepGraphon& kernel, const GridFunction& g,
                    const GridFunction* params, const CouplingSpec& coupling,
                    double T, double dt, uint32_t save_every,
                    unsigned threads = 1);

// Projects W and g to resolution m, then delegates to simulate.
Trajectory solve_continuum(const AnalyticKernel& w,
                           const std::function<double(double)>& g,
                           const CouplingSpec& coupling, uint32_t m, double T,
                           double dt, uint32_t save_every,
                           unsigned threads = 1);
Trajectory solve_continuum(const StepGraphon& w,
                           const std::function<double(double)>& g,
                           const CouplingSpec& coupling, uint32_t m, double T,
                           double dt, uint32_t save_every,
                           unsigned threads = 1);

// max over saved times of the L2 distance between states.
double trajectory_distance(const Trajectory& u, const Trajectory& v);

struct QuotientTrajectoryResult {
  double distance = 0.0;  // upper bound on the quotient distance
  Permutation sigma;      // relabeling achieving it
};

// Minimizes the trajectory distance over node relabelings applied to u.
// Exact enumeration for n <= 8; otherwise seeded restarts of a pairwise
// swap search on the summed squared distance, re-scored with the true
// objective.
QuotientTrajectoryResult quotient_trajectory_distance(const Trajectory& u,
                                                      const Trajectory& v,
                                                      uint32_t sweeps,
                                                      uint64_t seed);

// Checks |u(t)| <= ||g||_inf + (bound_f + B bound_D) t on every snapshot.
// Couplings with unbounded D are rejected.
bool a_priori_bound_check(const Trajectory& traj, const CouplingSpec& coupling,
                          const GridFunction& g, const GridFunction* params,
                          const StepGraphon& kernel);

}  // namespace gldp
