#pragma once

// Scalar lane pack and per-element primitives.  kernels_scalar.cpp builds
// the reference Ops table from these; kernels_avx2.cpp includes them for
// loop tails.  Both translation units are compiled with fp contraction off,
// and the comparison-style min/max below mirror the vminpd/vmaxpd operand
// semantics, so per-element results are identical across the two tables.

#include <bit>
#include <cmath>
#include <cstdint>

#include "gldp/simd/vecmath_inl.hpp"

namespace gldp::simd::detail {

// 1.5 * 2^52: adding it pushes |v| <= 2^51 onto the unit grid with round to
// nearest even, and the payload bits then differ from the constant's by v.
inline constexpr double kMagic = 0x1.8p52;
inline const std::int64_t kMagicBits = std::bit_cast<std::int64_t>(kMagic);

inline std::int64_t quantize_one(double x, double pow2scale) {
  double v = x * pow2scale;
  return std::bit_cast<std::int64_t>(v + kMagic) - kMagicBits;
}

struct ScalarPack {
  double v;
  static constexpr int width = 1;

  static ScalarPack splat(double x) { return {x}; }
  static ScalarPack load(const double* p) { return {*p}; }
  void store(double* p) const { *p = v; }

  friend ScalarPack operator+(ScalarPack a, ScalarPack b) { return {a.v + b.v}; }
  friend ScalarPack operator-(ScalarPack a, ScalarPack b) { return {a.v - b.v}; }
  friend ScalarPack operator*(ScalarPack a, ScalarPack b) { return {a.v * b.v}; }
  friend ScalarPack operator/(ScalarPack a, ScalarPack b) { return {a.v / b.v}; }

  static ScalarPack fma(ScalarPack a, ScalarPack b, ScalarPack c) {
    return {std::fma(a.v, b.v, c.v)};
  }
  static ScalarPack rint(ScalarPack a) { return {std::nearbyint(a.v)}; }
  static ScalarPack abs(ScalarPack a) { return {std::fabs(a.v)}; }
  static ScalarPack copysign_val(ScalarPack mag, ScalarPack sgn) {
    return {std::copysign(mag.v, sgn.v)};
  }
  static ScalarPack lt_mask(ScalarPack a, ScalarPack b) {
    return {a.v < b.v ? std::bit_cast<double>(~std::uint64_t{0}) : 0.0};
  }
  static ScalarPack blend(ScalarPack mask, ScalarPack a, ScalarPack b) {
    return {std::signbit(mask.v) ? a.v : b.v};
  }
  static ScalarPack min(ScalarPack a, ScalarPack b) {
    return {a.v < b.v ? a.v : b.v};
  }
  static ScalarPack max(ScalarPack a, ScalarPack b) {
    return {a.v > b.v ? a.v : b.v};
  }
  static ScalarPack exp2_int(ScalarPack k) {
    auto ki = static_cast<std::int64_t>(k.v);
    return {std::bit_cast<double>((ki + 1023) << 52)};
  }
};

inline double sin2pi_one(double x) { return sin2pi_p<ScalarPack>({x}).v; }
inline double exp_one(double x) { return exp_p<ScalarPack>({x}).v; }
inline double tanh_one(double x) { return tanh_p<ScalarPack>({x}).v; }

inline double pair_term_one(PairKind kind, double ui, double uj, double k) {
  double d = uj - ui;
  switch (kind) {
    case PairKind::linear:
      return k * d;
    case PairKind::kuramoto:
      return k * sin2pi_one(d);
    case PairKind::tanh_diff:
      return k * tanh_one(d);
  }
  return 0.0;
}

}  // namespace gldp::simd::detail
