#pragma once

// Data-parallel kernels backing the norm enumerations, the coupling sums of
// the dynamics integrator, and the entropy / distance reductions.  A scalar
// reference implementation and an AVX2 implementation are selected at
// runtime; both are required to produce bitwise identical output.
//
// Reductions achieve order independence by accumulating in fixed point:
// terms are scaled by a power of two chosen from a bound on their magnitude,
// rounded to int64 (round to nearest even), and summed exactly in 128-bit
// integers.  Integer addition commutes, so the result does not depend on
// lane structure, summation order, or worker count, and quantities derived
// from it are exactly invariant under permutations of the input.

#include <cstddef>
#include <cstdint>

namespace gldp::simd {

using i128 = __int128;

enum class PairKind : int { linear = 0, kuramoto = 1, tanh_diff = 2 };

struct Ops {
  const char* name;

  double (*max_abs)(const double* x, std::size_t n);
  double (*max_abs_diff)(const double* x, const double* y, std::size_t n);

  // out[i] = round_even(x[i] * pow2scale); |x[i] * pow2scale| must be < 2^51
  void (*quantize_i64)(const double* x, std::size_t n, double pow2scale,
                       std::int64_t* out);

  // sum of round_even(x[i] * pow2scale), exact
  i128 (*fixed_accum)(const double* x, std::size_t n, double pow2scale);

  // t[j] += c * row[j]
  void (*axpy_i64)(std::int64_t* t, const std::int64_t* row, std::size_t n,
                   std::int64_t c);

  std::int64_t (*abs_sum_i64)(const std::int64_t* t, std::size_t n);

  // *pos = sum of max(t[j], 0), *neg = sum of max(-t[j], 0)
  void (*pos_neg_sum_i64)(const std::int64_t* t, std::size_t n,
                          std::int64_t* pos, std::int64_t* neg);

  void (*sin2pi)(const double* x, double* out, std::size_t n);
  void (*vexp)(const double* x, double* out, std::size_t n);
  void (*vtanh)(const double* x, double* out, std::size_t n);

  // out[j] = krow[j] * D(ui, u[j]) for the registered coupling kinds
  void (*pair_terms)(PairKind kind, double ui, const double* u,
                     const double* krow, double* out, std::size_t n);

  // out[i] = x[i] + a * y[i], separate multiply and add
  void (*axpby)(const double* x, const double* y, double a, double* out,
                std::size_t n);

  // u[i] += dt6 * ((k1[i] + k4[i]) + 2 * (k2[i] + k3[i]))
  void (*rk4_combine)(double* u, const double* k1, const double* k2,
                      const double* k3, const double* k4, double dt6,
                      std::size_t n);

  // out[i] = (x[i] - y[i])^2
  void (*sq_diff)(const double* x, const double* y, double* out,
                  std::size_t n);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when the host lacks AVX2+FMA
bool avx2_available();

// Dispatched table: AVX2 when available unless forced off (used by the
// equivalence tests and honored for GLDP_SIMD=scalar in the environment).
const Ops& ops();
void force_scalar(bool on);

// ---------------------------------------------------------------- helpers

// Largest s with max_abs * 2^s < 2^51, so scaled terms survive the
// round-to-int64 conversion.  Clamped to the representable range of 2^s.
int accum_scale(double max_abs);

// Scale for the norm enumerations: additionally leaves headroom so that
// column sums over n rows and their absolute sums over n columns stay
// below 2^61 in int64.
int enum_scale(double max_abs, std::size_t n);

double pow2(int e);

double i128_to_double(i128 v, int scale);

// Order-independent sum of x: two passes (max then fixed-point accumulate).
double fixed_sum(const double* x, std::size_t n);

// One-pass variant when a bound on |x[i]| is already known.
double fixed_sum_bounded(const double* x, std::size_t n, double bound);

}  // namespace gldp::simd
