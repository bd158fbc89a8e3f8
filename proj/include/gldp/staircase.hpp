#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace gldp {

// Coupling on the k x k grid of blocks T_ij = [(i-1)/k, i/k) x [(j-1)/k, j/k)
// with uniform marginals: every row and column sums to 1/k within 1e-12.
struct DiscreteCoupling {
  uint32_t k = 0;
  std::vector<double> masses;  // row-major, index i*k + j

  DiscreteCoupling() = default;
  DiscreteCoupling(uint32_t k_, std::vector<double> m);

  double at(uint32_t i, uint32_t j) const {
    return masses[std::size_t(i) * k + j];
  }
  static DiscreteCoupling diagonal(uint32_t k);
  static DiscreteCoupling uniform(uint32_t k);
};

struct Segment {
  double start_x = 0.0;
  double start_y = 0.0;
  double length = 0.0;
};

// Piecewise translation x -> start_y + (x - start_x) on diagonal segments.
// Valid instances tile [0,1) with the x-projections and with the
// y-projections (that is Lebesgue-measure preservation); both tilings are
// asserted to 1e-12 at construction.
struct PiecewiseBijection {
  std::vector<Segment> segments;  // sorted by start_x

  PiecewiseBijection() = default;
  explicit PiecewiseBijection(std::vector<Segment> segs);
};

// Bins sample pairs into the k x k blocks, normalizes, and repairs the
// marginals by alternating row/column rescaling (tolerance 1e-10).  A row
// or column with no mass at all cannot be repaired and is rejected.
DiscreteCoupling coupling_from_samples(
    const std::vector<std::pair<double, double>>& pairs, uint32_t k);

// Random strictly positive coupling: uniform block masses rescaled to the
// marginal polytope.  Deterministic in the seed.
DiscreteCoupling random_coupling(uint32_t k, uint64_t seed);

// The staircase construction: block (i,j) contributes the diagonal segment
// of length m_ij starting at
//   x = (i-1)/k + sum_{l<j} m_il,   y = (j-1)/k + sum_{r<i} m_rj,
// so each block's mass stays inside its block and the two tilings hold by
// construction.  Zero-mass blocks emit nothing.
PiecewiseBijection staircase_bijection(const DiscreteCoupling& nu);

// y for the segment covering x.
double evaluate(const PiecewiseBijection& theta, double x);

// Exact block masses of the induced coupling at resolution k, by
// interval-boundary splitting (no sampling).  Row-major k x k.
std::vector<double> pushforward_blocks(const PiecewiseBijection& theta,
                                       uint32_t k);

// Splits every block into factor^2 equal sub-blocks (the piecewise-uniform
// refinement of the coupling).
DiscreteCoupling refine_coupling(const DiscreteCoupling& nu, uint32_t factor);

// Block sums down to resolution k (k must divide nu.k).
DiscreteCoupling coarsen_coupling(const DiscreteCoupling& nu, uint32_t k);

// Surrogate weak-topology distance: both couplings refined to the common
// grid, then the maximum absolute difference of integrals over a fixed
// dictionary of 32 low-frequency product test functions, evaluated with
// closed-form block averages.
double weak_distance(const DiscreteCoupling& a, const DiscreteCoupling& b);

}  // namespace gldp
