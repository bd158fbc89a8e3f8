#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gldp/common.hpp"

namespace gldp {

// Piecewise-constant function on [0,1): cell i is [i/n, (i+1)/n).
// Houses coarse-grained initial data, parameter vectors, and solution
// snapshots.
struct GridFunction {
  uint32_t n = 0;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(uint32_t n_, std::vector<double> v);

  double operator[](std::size_t i) const { return values[i]; }
};

// Least common refinement of two resolutions; throws past the cap.
uint32_t common_resolution(uint32_t a, uint32_t b, uint32_t cap = 2048);

// Cell averages of g, order-4 Gauss-Legendre per cell.
GridFunction grid_from_function(const std::function<double(double)>& g,
                                uint32_t n);

// Replicate cells onto a finer grid; target must be a multiple of n.
GridFunction refine_grid(const GridFunction& f, uint32_t target);

// Block means on a coarser grid; n must divide f.n.
GridFunction coarsen_grid(const GridFunction& f, uint32_t n);

// L2([0,1]) distance after common refinement.  The reduction is
// order-independent fixed-point accumulation, so the value is exactly
// invariant under applying one permutation to both arguments.
double grid_l2_distance(const GridFunction& f, const GridFunction& g);

double grid_max_abs(const GridFunction& f);

}  // namespace gldp
