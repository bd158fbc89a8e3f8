// AVX2 kernel variants.  Vector bodies instantiate the same templates as the
// scalar reference with a 4-lane pack, and tails reuse the scalar
// per-element primitives, so output is bitwise identical to the reference
// table.  Compiled with -mavx2 -mfma; only reachable through the dispatch
// table after a cpuid check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "gldp/simd/kernels.hpp"
#include "gldp/simd/scalar_inl.hpp"

namespace gldp::simd {
namespace {

using detail::kMagic;
using detail::kMagicBits;
using detail::quantize_one;

struct AvxPack {
  __m256d v;
  static constexpr int width = 4;

  static AvxPack splat(double x) { return {_mm256_set1_pd(x)}; }
  static AvxPack load(const double* p) { return {_mm256_loadu_pd(p)}; }
  void store(double* p) const { _mm256_storeu_pd(p, v); }

  friend AvxPack operator+(AvxPack a, AvxPack b) {
    return {_mm256_add_pd(a.v, b.v)};
  }
  friend AvxPack operator-(AvxPack a, AvxPack b) {
    return {_mm256_sub_pd(a.v, b.v)};
  }
  friend AvxPack operator*(AvxPack a, AvxPack b) {
    return {_mm256_mul_pd(a.v, b.v)};
  }
  friend AvxPack operator/(AvxPack a, AvxPack b) {
    return {_mm256_div_pd(a.v, b.v)};
  }

  static AvxPack fma(AvxPack a, AvxPack b, AvxPack c) {
    return {_mm256_fmadd_pd(a.v, b.v, c.v)};
  }
  static AvxPack rint(AvxPack a) {
    return {_mm256_round_pd(a.v, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC)};
  }
  static AvxPack abs(AvxPack a) {
    return {_mm256_andnot_pd(_mm256_set1_pd(-0.0), a.v)};
  }
  static AvxPack copysign_val(AvxPack mag, AvxPack sgn) {
    __m256d mask = _mm256_set1_pd(-0.0);
    return {_mm256_or_pd(_mm256_andnot_pd(mask, mag.v),
                         _mm256_and_pd(mask, sgn.v))};
  }
  static AvxPack lt_mask(AvxPack a, AvxPack b) {
    return {_mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ)};
  }
  static AvxPack blend(AvxPack mask, AvxPack a, AvxPack b) {
    return {_mm256_blendv_pd(b.v, a.v, mask.v)};
  }
  static AvxPack min(AvxPack a, AvxPack b) {
    return {_mm256_min_pd(a.v, b.v)};
  }
  static AvxPack max(AvxPack a, AvxPack b) {
    return {_mm256_max_pd(a.v, b.v)};
  }
  static AvxPack exp2_int(AvxPack k) {
    // k integer-valued, |k| <= 1021: round-trip through the magic constant
    // to get int64 lanes, then build the exponent bits directly.
    __m256d shifted = _mm256_add_pd(k.v, _mm256_set1_pd(kMagic));
    __m256i ki = _mm256_sub_epi64(_mm256_castpd_si256(shifted),
                                  _mm256_set1_epi64x(kMagicBits));
    __m256i bits =
        _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
    return {_mm256_castsi256_pd(bits)};
  }
};

inline __m256i quantize4(__m256d x, __m256d s) {
  __m256d v = _mm256_mul_pd(x, s);
  __m256d shifted = _mm256_add_pd(v, _mm256_set1_pd(kMagic));
  return _mm256_sub_epi64(_mm256_castpd_si256(shifted),
                          _mm256_set1_epi64x(kMagicBits));
}

inline std::int64_t hsum_epi64(__m256i a) {
  __m128i lo = _mm256_castsi256_si128(a);
  __m128i hi = _mm256_extracti128_si256(a, 1);
  __m128i s = _mm_add_epi64(lo, hi);
  return _mm_extract_epi64(s, 0) + _mm_extract_epi64(s, 1);
}

double v_max_abs(const double* x, std::size_t n) {
  std::size_t nv = n / 4 * 4;
  __m256d acc = _mm256_setzero_pd();
  __m256d sign = _mm256_set1_pd(-0.0);
  for (std::size_t i = 0; i < nv; i += 4)
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  __m128d m2 = _mm_max_pd(_mm256_castpd256_pd128(acc),
                          _mm256_extractf128_pd(acc, 1));
  double m = _mm_cvtsd_f64(_mm_max_sd(m2, _mm_unpackhi_pd(m2, m2)));
  for (std::size_t i = nv; i < n; ++i) {
    double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

double v_max_abs_diff(const double* x, const double* y, std::size_t n) {
  std::size_t nv = n / 4 * 4;
  __m256d acc = _mm256_setzero_pd();
  __m256d sign = _mm256_set1_pd(-0.0);
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, d));
  }
  __m128d m2 = _mm_max_pd(_mm256_castpd256_pd128(acc),
                          _mm256_extractf128_pd(acc, 1));
  double m = _mm_cvtsd_f64(_mm_max_sd(m2, _mm_unpackhi_pd(m2, m2)));
  for (std::size_t i = nv; i < n; ++i) {
    double a = std::fabs(x[i] - y[i]);
    if (a > m) m = a;
  }
  return m;
}

void v_quantize_i64(const double* x, std::size_t n, double s,
                    std::int64_t* out) {
  std::size_t nv = n / 4 * 4;
  __m256d sv = _mm256_set1_pd(s);
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256i q = quantize4(_mm256_loadu_pd(x + i), sv);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), q);
  }
  for (std::size_t i = nv; i < n; ++i) out[i] = quantize_one(x[i], s);
}

i128 v_fixed_accum(const double* x, std::size_t n, double s) {
  // Lane partials stay below 2^51 per element; spill to 128-bit before 2^12
  // elements can accumulate so int64 lanes cannot overflow.
  constexpr std::size_t kSpill = 1024;  // iterations of 4
  __m256d sv = _mm256_set1_pd(s);
  i128 acc = 0;
  std::size_t i = 0;
  std::size_t nv = n / 4 * 4;
  while (i < nv) {
    std::size_t stop = i + 4 * kSpill;
    if (stop > nv) stop = nv;
    __m256i lanes = _mm256_setzero_si256();
    for (; i < stop; i += 4)
      lanes = _mm256_add_epi64(lanes, quantize4(_mm256_loadu_pd(x + i), sv));
    alignas(32) std::int64_t tmp[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(tmp), lanes);
    acc += static_cast<i128>(tmp[0]) + tmp[1] + tmp[2] + tmp[3];
  }
  for (std::size_t j = nv; j < n; ++j) acc += quantize_one(x[j], s);
  return acc;
}

void v_axpy_i64(std::int64_t* t, const std::int64_t* row, std::size_t n,
                std::int64_t c) {
  std::size_t nv = n / 4 * 4;
  if (c == 1) {
    for (std::size_t i = 0; i < nv; i += 4) {
      __m256i tv = _mm256_loadu_si256(reinterpret_cast<__m256i*>(t + i));
      __m256i rv =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(t + i),
                          _mm256_add_epi64(tv, rv));
    }
  } else if (c == -1) {
    for (std::size_t i = 0; i < nv; i += 4) {
      __m256i tv = _mm256_loadu_si256(reinterpret_cast<__m256i*>(t + i));
      __m256i rv =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(t + i),
                          _mm256_sub_epi64(tv, rv));
    }
  } else if (c == 2) {
    for (std::size_t i = 0; i < nv; i += 4) {
      __m256i tv = _mm256_loadu_si256(reinterpret_cast<__m256i*>(t + i));
      __m256i rv =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(t + i),
                          _mm256_add_epi64(tv, _mm256_slli_epi64(rv, 1)));
    }
  } else if (c == -2) {
    for (std::size_t i = 0; i < nv; i += 4) {
      __m256i tv = _mm256_loadu_si256(reinterpret_cast<__m256i*>(t + i));
      __m256i rv =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(t + i),
                          _mm256_sub_epi64(tv, _mm256_slli_epi64(rv, 1)));
    }
  } else {
    for (std::size_t i = 0; i < nv; ++i) t[i] += c * row[i];
  }
  for (std::size_t i = nv; i < n; ++i) t[i] += c * row[i];
}

std::int64_t v_abs_sum_i64(const std::int64_t* t, std::size_t n) {
  std::size_t nv = n / 4 * 4;
  __m256i acc = _mm256_setzero_si256();
  __m256i zero = _mm256_setzero_si256();
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256i tv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t + i));
    __m256i neg = _mm256_cmpgt_epi64(zero, tv);
    __m256i abs = _mm256_sub_epi64(_mm256_xor_si256(tv, neg), neg);
    acc = _mm256_add_epi64(acc, abs);
  }
  std::int64_t s = hsum_epi64(acc);
  for (std::size_t i = nv; i < n; ++i) s += t[i] < 0 ? -t[i] : t[i];
  return s;
}

void v_pos_neg_sum_i64(const std::int64_t* t, std::size_t n, std::int64_t* pos,
                       std::int64_t* neg) {
  std::size_t nv = n / 4 * 4;
  __m256i accp = _mm256_setzero_si256();
  __m256i accm = _mm256_setzero_si256();
  __m256i zero = _mm256_setzero_si256();
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256i tv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t + i));
    accp = _mm256_add_epi64(accp,
                            _mm256_and_si256(tv, _mm256_cmpgt_epi64(tv, zero)));
    accm = _mm256_add_epi64(accm,
                            _mm256_and_si256(tv, _mm256_cmpgt_epi64(zero, tv)));
  }
  std::int64_t p = hsum_epi64(accp);
  std::int64_t m = hsum_epi64(accm);
  for (std::size_t i = nv; i < n; ++i) {
    if (t[i] > 0)
      p += t[i];
    else
      m += t[i];
  }
  *pos = p;
  *neg = -m;
}

void v_sin2pi(const double* x, double* out, std::size_t n) {
  std::size_t nv = n / 4 * 4;
  for (std::size_t i = 0; i < nv; i += 4)
    sin2pi_p<AvxPack>(AvxPack::load(x + i)).store(out + i);
  for (std::size_t i = nv; i < n; ++i) out[i] = detail::sin2pi_one(x[i]);
}

void v_vexp(const double* x, double* out, std::size_t n) {
  std::size_t nv = n / 4 * 4;
  for (std::size_t i = 0; i < nv; i += 4)
    exp_p<AvxPack>(AvxPack::load(x + i)).store(out + i);
  for (std::size_t i = nv; i < n; ++i) out[i] = detail::exp_one(x[i]);
}

void v_vtanh(const double* x, double* out, std::size_t n) {
  std::size_t nv = n / 4 * 4;
  for (std::size_t i = 0; i < nv; i += 4)
    tanh_p<AvxPack>(AvxPack::load(x + i)).store(out + i);
  for (std::size_t i = nv; i < n; ++i) out[i] = detail::tanh_one(x[i]);
}

void v_pair_terms(PairKind kind, double ui, const double* u,
                  const double* krow, double* out, std::size_t n) {
  std::size_t nv = n / 4 * 4;
  AvxPack uiv = AvxPack::splat(ui);
  switch (kind) {
    case PairKind::linear:
      for (std::size_t j = 0; j < nv; j += 4)
        (AvxPack::load(krow + j) * (AvxPack::load(u + j) - uiv))
            .store(out + j);
      break;
    case PairKind::kuramoto:
      for (std::size_t j = 0; j < nv; j += 4)
        (AvxPack::load(krow + j) *
         sin2pi_p<AvxPack>(AvxPack::load(u + j) - uiv))
            .store(out + j);
      break;
    case PairKind::tanh_diff:
      for (std::size_t j = 0; j < nv; j += 4)
        (AvxPack::load(krow + j) * tanh_p<AvxPack>(AvxPack::load(u + j) - uiv))
            .store(out + j);
      break;
  }
  for (std::size_t j = nv; j < n; ++j)
    out[j] = detail::pair_term_one(kind, ui, u[j], krow[j]);
}

void v_axpby(const double* x, const double* y, double a, double* out,
             std::size_t n) {
  std::size_t nv = n / 4 * 4;
  __m256d av = _mm256_set1_pd(a);
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256d t = _mm256_mul_pd(av, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(x + i), t));
  }
  for (std::size_t i = nv; i < n; ++i) {
    double t = a * y[i];
    out[i] = x[i] + t;
  }
}

void v_rk4_combine(double* u, const double* k1, const double* k2,
                   const double* k3, const double* k4, double dt6,
                   std::size_t n) {
  std::size_t nv = n / 4 * 4;
  __m256d dv = _mm256_set1_pd(dt6);
  __m256d two = _mm256_set1_pd(2.0);
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256d s14 = _mm256_add_pd(_mm256_loadu_pd(k1 + i), _mm256_loadu_pd(k4 + i));
    __m256d s23 = _mm256_add_pd(_mm256_loadu_pd(k2 + i), _mm256_loadu_pd(k3 + i));
    __m256d s = _mm256_add_pd(s14, _mm256_mul_pd(two, s23));
    __m256d t = _mm256_mul_pd(dv, s);
    _mm256_storeu_pd(u + i, _mm256_add_pd(_mm256_loadu_pd(u + i), t));
  }
  for (std::size_t i = nv; i < n; ++i) {
    double s14 = k1[i] + k4[i];
    double s23 = k2[i] + k3[i];
    double s = s14 + 2.0 * s23;
    u[i] = u[i] + dt6 * s;
  }
}

void v_sq_diff(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t nv = n / 4 * 4;
  for (std::size_t i = 0; i < nv; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(d, d));
  }
  for (std::size_t i = nv; i < n; ++i) {
    double d = x[i] - y[i];
    out[i] = d * d;
  }
}

const Ops kAvx2Ops = {
    "avx2",       v_max_abs,    v_max_abs_diff,    v_quantize_i64,
    v_fixed_accum, v_axpy_i64,  v_abs_sum_i64,     v_pos_neg_sum_i64,
    v_sin2pi,     v_vexp,       v_vtanh,           v_pair_terms,
    v_axpby,      v_rk4_combine, v_sq_diff,
};

}  // namespace

const Ops* avx2_ops_impl() { return &kAvx2Ops; }

}  // namespace gldp::simd

#else

namespace gldp::simd {
struct Ops;
const Ops* avx2_ops_impl() { return nullptr; }
}  // namespace gldp::simd

#endif
