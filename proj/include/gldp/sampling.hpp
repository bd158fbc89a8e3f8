#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gldp/graphon.hpp"
#include "gldp/grid.hpp"
#include "gldp/rng.hpp"

namespace gldp {

// Binary adjacency sample.  Self-pairs are sampled like any other pair, so
// loops may occur.  Undirected graphs store the upper triangle mirrored
// into the lower.
struct AdjacencyGraph {
  uint32_t n = 0;
  std::vector<uint8_t> bits;  // row-major n*n, entries 0/1
  bool directed = true;
  double alpha = 1.0;
  uint64_t seed = 0;
  std::string source;

  AdjacencyGraph(uint32_t n_, bool directed_, double alpha_, uint64_t seed_,
                 std::string source_);

  uint8_t at(uint32_t i, uint32_t j) const {
    return bits[std::size_t(i) * n + j];
  }
  uint64_t edge_count() const;
};

// Independent Bernoulli(W_ij) edges.  Each pair draws from a counter-based
// stream indexed by (seed, i*n+j), so the result is a pure function of the
// arguments regardless of evaluation order or worker count.
AdjacencyGraph sample_w_random(const StepGraphon& wn, uint64_t seed,
                               bool directed);

// Bernoulli(alpha * W_ij) edges, directed.  With alpha = 1 this produces
// exactly the bits of sample_w_random for the same seed.
AdjacencyGraph sample_sparse(const StepGraphon& wn, double alpha,
                             uint64_t seed);

struct TiltedSample {
  AdjacencyGraph graph;
  double log_weight = 0.0;
};

// Draws bits under V and reports the log likelihood ratio of the W-measure
// against the V-measure at the sample (the importance weight in log form).
TiltedSample sample_tilted(const StepGraphon& vn, const StepGraphon& wn,
                           uint64_t seed);

// The log ratio for an arbitrary bit pattern; used by exhaustive checks.
// Symbols impossible under both measures contribute 0; a symbol impossible
// under W alone gives -inf, under V alone +inf.
double tilted_log_weight(const AdjacencyGraph& g, const StepGraphon& vn,
                         const StepGraphon& wn);

// Empirical graphon of a sample: cell values are the bits, or bits/alpha
// with bound 1/alpha when rescale is set (a no-op at alpha = 1).
StepGraphon embed(const AdjacencyGraph& g, bool rescale = false);

// Finitely supported law given by atoms and probabilities.
struct FiniteLaw {
  std::vector<double> atoms;
  std::vector<double> probs;

  FiniteLaw(std::vector<double> atoms_, std::vector<double> probs_);

  double mean() const;
  double min_atom() const;
  double max_atom() const;
  double max_abs() const;
  double sample(Rng& rng) const;

  static FiniteLaw point(double a);
  static FiniteLaw uniform(std::vector<double> atoms_);
};

struct InitialCondition {
  GridFunction fine;    // high-resolution representation
  GridFunction coarse;  // cell averages at the working resolution
};

struct IcSpec {
  enum class Kind { deterministic, lipschitz, convolved } kind;
  std::function<double(double)> g;  // deterministic
  double lipschitz_m = 1.0;         // lipschitz
  std::vector<double> mu_atoms;     // convolved
  std::vector<double> mu_probs;
  double rho = 0.05;
  uint64_t seed = 0;
};

IcSpec deterministic_ic(std::function<double(double)> g);
IcSpec lipschitz_ic(double m, uint64_t seed);
IcSpec convolved_ic(const FiniteLaw& mu, double rho, uint64_t seed);

// deterministic: cell averages of g (fine at 16n).
// lipschitz: cell averages of an m-Lipschitz random path (fine at 16n);
//   the fine/coarse gap obeys ||fine - coarse||_L2 <= m/n.
// convolved: n^2 iid draws from mu on the fine grid, extended periodically
//   and convolved with a unit-mass smooth bump of half-width rho; coarse is
//   the block average.
InitialCondition make_initial_condition(const IcSpec& spec, uint32_t n);

// Node parameters with the convolved mechanics at resolution n.
GridFunction make_parameters(const FiniteLaw& mu, uint32_t n, uint64_t seed,
                             double rho = 0.05);

}  // namespace gldp
