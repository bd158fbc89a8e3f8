#include "gldp/grid.hpp"

#include <cmath>
#include <numeric>

#include "gldp/simd/kernels.hpp"

namespace gldp {

namespace {

// Order-4 Gauss-Legendre on [-1,1].
constexpr double kGlNode[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
constexpr double kGlWeight[4] = {0.3478548451374538, 0.6521451548625461,
                                 0.6521451548625461, 0.3478548451374538};

}  // namespace

GridFunction::GridFunction(uint32_t n_, std::vector<double> v)
    : n(n_), values(std::move(v)) {
  require(n >= 1, "grid: resolution must be positive");
  require(values.size() == n, "grid: value count must equal resolution");
  for (double x : values)
    require(std::isfinite(x), "grid: values must be finite");
}

uint32_t common_resolution(uint32_t a, uint32_t b, uint32_t cap) {
  require(a >= 1 && b >= 1, "common refinement: resolutions must be positive");
  uint64_t l = std::lcm<uint64_t>(a, b);
  require(l <= cap, "common refinement exceeds the cap of " +
                        std::to_string(cap) + " cells");
  return static_cast<uint32_t>(l);
}

GridFunction grid_from_function(const std::function<double(double)>& g,
                                uint32_t n) {
  require(n >= 1, "grid: resolution must be positive");
  std::vector<double> v(n);
  double h = 1.0 / n;
  for (uint32_t i = 0; i < n; ++i) {
    double mid = (i + 0.5) * h;
    double acc = 0.0;
    for (int q = 0; q < 4; ++q)
      acc += kGlWeight[q] * g(mid + 0.5 * h * kGlNode[q]);
    v[i] = 0.5 * acc;
  }
  return GridFunction(n, std::move(v));
}

GridFunction refine_grid(const GridFunction& f, uint32_t target) {
  require(f.n >= 1, "refine: empty grid");
  require(target % f.n == 0, "refine: target must be a multiple of n");
  uint32_t r = target / f.n;
  if (r == 1) return f;
  std::vector<double> v(target);
  for (uint32_t i = 0; i < f.n; ++i)
    for (uint32_t k = 0; k < r; ++k) v[i * r + k] = f.values[i];
  return GridFunction(target, std::move(v));
}

GridFunction coarsen_grid(const GridFunction& f, uint32_t n) {
  require(n >= 1 && f.n % n == 0, "coarsen: n must divide the resolution");
  uint32_t r = f.n / n;
  if (r == 1) return f;
  std::vector<double> v(n);
  for (uint32_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (uint32_t k = 0; k < r; ++k) acc += f.values[i * r + k];
    v[i] = acc / r;
  }
  return GridFunction(n, std::move(v));
}

double grid_l2_distance(const GridFunction& f, const GridFunction& g) {
  // one-dimensional refinements are cheap, so the cap is far looser than
  // the kernel cap
  uint32_t L = common_resolution(f.n, g.n, 1u << 20);
  GridFunction fr = refine_grid(f, L);
  GridFunction gr = refine_grid(g, L);
  std::vector<double> sq(L);
  simd::ops().sq_diff(fr.values.data(), gr.values.data(), sq.data(), L);
  double m = simd::ops().max_abs(sq.data(), L);
  if (m == 0.0) return 0.0;
  double total = simd::fixed_sum_bounded(sq.data(), L, m);
  return std::sqrt(total / L);
}

double grid_max_abs(const GridFunction& f) {
  return simd::ops().max_abs(f.values.data(), f.values.size());
}

}  // namespace gldp
