#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "gldp/simd/kernels.hpp"

namespace gldp::simd {

const Ops* avx2_ops_impl();

namespace {

bool host_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<bool> g_force_scalar{false};

bool env_forces_scalar() {
  const char* v = std::getenv("GLDP_SIMD");
  return v != nullptr && std::strcmp(v, "scalar") == 0;
}

}  // namespace

bool avx2_available() {
  static const bool ok = host_has_avx2() && avx2_ops_impl() != nullptr;
  return ok;
}

const Ops* avx2_ops() { return avx2_available() ? avx2_ops_impl() : nullptr; }

void force_scalar(bool on) { g_force_scalar.store(on); }

const Ops& ops() {
  static const bool env_scalar = env_forces_scalar();
  if (g_force_scalar.load() || env_scalar || !avx2_available())
    return scalar_ops();
  return *avx2_ops_impl();
}

int accum_scale(double max_abs) {
  if (!(max_abs > 0.0)) return 0;
  int s = 50 - std::ilogb(max_abs);
  return s > 1023 ? 1023 : s;
}

int enum_scale(double max_abs, std::size_t n) {
  if (!(max_abs > 0.0)) return 0;
  int lg = 0;
  while ((std::size_t{1} << lg) < n) ++lg;
  int budget = 60 - 2 * lg;
  if (budget > 50) budget = 50;
  int s = budget - std::ilogb(max_abs);
  return s > 1023 ? 1023 : s;
}

double pow2(int e) { return std::ldexp(1.0, e); }

double i128_to_double(i128 v, int scale) {
  return std::ldexp(static_cast<double>(v), -scale);
}

double fixed_sum(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  double m = ops().max_abs(x, n);
  if (m == 0.0) return 0.0;
  int s = accum_scale(m);
  return i128_to_double(ops().fixed_accum(x, n, pow2(s)), s);
}

double fixed_sum_bounded(const double* x, std::size_t n, double bound) {
  if (n == 0 || !(bound > 0.0)) return 0.0;
  int s = accum_scale(bound);
  return i128_to_double(ops().fixed_accum(x, n, pow2(s)), s);
}

}  // namespace gldp::simd
