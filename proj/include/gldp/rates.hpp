#pragma once

#include <cstdint>
#include <optional>

#include "gldp/graphon.hpp"
#include "gldp/grid.hpp"
#include "gldp/norms.hpp"
#include "gldp/sampling.hpp"

namespace gldp {

enum class RateMode { exact, heuristic_upper, heuristic_lower };

struct RateReport {
  double value = 0.0;  // nonnegative, may be kInf
  RateMode mode = RateMode::exact;
  std::optional<Permutation> sigma;  // witness relabeling when minimized
};

// Mean Bernoulli relative entropy per cell,
//   (1/n^2) sum v log(v/w) + (1-v) log((1-v)/(1-w)),
// with 0 log 0 = 0 and +inf exactly when absolute continuity fails on a
// cell.  Inputs of different resolutions are refined to the common grid.
// The reduction is fixed point, so the value is exactly invariant under
// applying one permutation to both arguments.
RateReport upsilon(const StepGraphon& v, const StepGraphon& w);

// min over cell relabelings sigma of upsilon(V_sigma, W).  Exact
// enumeration needs n <= 8; the heuristic swap search reports an upper
// bound and its witness.
RateReport rate_quotient(const StepGraphon& v, const StepGraphon& w,
                         NormMode mode,
                         const HeuristicConfig& cfg = HeuristicConfig{});

// Poisson-type cost (1/n^2) sum w * ell(v/w) with ell(z) = z log z - z + 1;
// w = 0 cells cost 0 when v = 0 and +inf otherwise.
RateReport sparse_rate(const StepGraphon& v, const StepGraphon& w);

// exp(-N h(delta/c)) with h(u) = (1+u) log(1+u) - u.
double bernstein_h(double u);
double bernstein_bound(uint64_t n_terms, double c, double delta);

// ell(z) = z log z - z + 1 on [0, inf), ell(0) = 1.
double poisson_ell(double z);

// Legendre transform sup_a [ab - log E exp(a X)] for a finitely supported
// law; +inf outside the support hull, -log P(X = b) at an endpoint atom.
double legendre_rate(const FiniteLaw& mu, double b);

// (max(w, delta)) min (1 - delta), the standard device for degenerate
// kernels.
StepGraphon clamp_graphon(const StepGraphon& w, double delta);

// 0 when g equals the generator target within tol, +inf otherwise (the
// rate of a deterministic initial condition).
double deterministic_rate(const GridFunction& g, const GridFunction& target,
                          double tol = 1e-12);

// Mean of legendre_rate(mu, ell_i) over cells: the cost of a candidate
// pre-image ell for a convolved initial condition.
double initial_condition_rate(const FiniteLaw& mu, const GridFunction& ell);

}  // namespace gldp
