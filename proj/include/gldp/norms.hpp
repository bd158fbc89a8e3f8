#pragma once

#include <cstdint>
#include <vector>

#include "gldp/graphon.hpp"

namespace gldp {

inline constexpr uint32_t kExactNormCap = 22;
inline constexpr uint32_t kExactQuotientCap = 8;

enum class NormMode { exact, heuristic };

struct HeuristicConfig {
  uint32_t restarts = 8;
  uint64_t seed = 0x5eed;
};

// exact: true optimum; lower_bound: value at a feasible point; upper_bound:
// value at a feasible permutation with the inner distance exact; estimate:
// heuristic through and through.
enum class BoundKind { exact, lower_bound, upper_bound, estimate };

// Norm values are computed on a fixed-point quantization of the kernel
// (granularity raw_scale as a power of two, headroom chosen so that the
// enumeration is exact integer arithmetic).  `value` is raw / (n^2 * 2^s);
// the raw parts allow exact cross-comparisons in tests.
struct NormResult {
  double value = 0.0;
  BoundKind kind = BoundKind::exact;
  std::int64_t raw = 0;
  int raw_scale = 0;
  uint32_t n = 0;
  std::vector<std::int8_t> a;  // witness, entries in {-1,0,1}
  std::vector<std::int8_t> b;
};

// sup over a,b in [-1,1]^n of |(1/n^2) a^T K b|.  The bilinear form is
// maximized at sign vectors with b the coordinatewise sign of the column
// sums; exact mode enumerates the 2^(n-1) sign classes with Gray-code
// updates.  Heuristic mode is alternating sign maximization from an
// all-ones start plus seeded random restarts and reports a feasible lower
// bound.
NormResult inf_one_norm(const SignedStepKernel& k, NormMode mode,
                        const HeuristicConfig& cfg = {});

// sup over subsets S,T of |integral over S x T|; indicator vectors with the
// optimal T chosen coordinatewise.  Same modes as inf_one_norm.
NormResult cut_norm(const SignedStepKernel& k, NormMode mode,
                    const HeuristicConfig& cfg = {});

// inf_one_norm of f - g after common refinement (cap 2048).
NormResult d_inf_one(const StepGraphon& f, const StepGraphon& g, NormMode mode,
                     const HeuristicConfig& cfg = {});

struct QuotientResult {
  NormResult dist;
  Permutation sigma;  // achieving permutation: dist = d(f_sigma, g)
};

struct QuotientConfig {
  uint32_t sweeps = 4;
  HeuristicConfig norm;
};

// inf over cell permutations of d_inf_one(f_sigma, g).  Exact mode
// enumerates all n! permutations (n <= 8).  Heuristic mode runs
// degree-sorting initialization plus pairwise-swap local search and returns
// an upper bound whenever the final distance evaluation is exact
// (common resolution <= 22), otherwise an estimate.
QuotientResult delta_inf_one(const StepGraphon& f, const StepGraphon& g,
                             NormMode mode, const QuotientConfig& cfg = {});

}  // namespace gldp
