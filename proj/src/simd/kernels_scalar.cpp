#include <cmath>
#include <cstdint>

#include "gldp/simd/kernels.hpp"
#include "gldp/simd/scalar_inl.hpp"

namespace gldp::simd {
namespace {

using detail::pair_term_one;
using detail::quantize_one;

double s_max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

double s_max_abs_diff(const double* x, const double* y, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double a = std::fabs(x[i] - y[i]);
    if (a > m) m = a;
  }
  return m;
}

void s_quantize_i64(const double* x, std::size_t n, double s,
                    std::int64_t* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = quantize_one(x[i], s);
}

i128 s_fixed_accum(const double* x, std::size_t n, double s) {
  i128 acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += quantize_one(x[i], s);
  return acc;
}

void s_axpy_i64(std::int64_t* t, const std::int64_t* row, std::size_t n,
                std::int64_t c) {
  for (std::size_t j = 0; j < n; ++j) t[j] += c * row[j];
}

std::int64_t s_abs_sum_i64(const std::int64_t* t, std::size_t n) {
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < n; ++j) acc += t[j] < 0 ? -t[j] : t[j];
  return acc;
}

void s_pos_neg_sum_i64(const std::int64_t* t, std::size_t n, std::int64_t* pos,
                       std::int64_t* neg) {
  std::int64_t p = 0, m = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (t[j] > 0)
      p += t[j];
    else
      m += t[j];
  }
  *pos = p;
  *neg = -m;
}

void s_sin2pi(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::sin2pi_one(x[i]);
}

void s_vexp(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::exp_one(x[i]);
}

void s_vtanh(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::tanh_one(x[i]);
}

void s_pair_terms(PairKind kind, double ui, const double* u,
                  const double* krow, double* out, std::size_t n) {
  switch (kind) {
    case PairKind::linear:
      for (std::size_t j = 0; j < n; ++j) out[j] = krow[j] * (u[j] - ui);
      break;
    case PairKind::kuramoto:
      for (std::size_t j = 0; j < n; ++j)
        out[j] = krow[j] * detail::sin2pi_one(u[j] - ui);
      break;
    case PairKind::tanh_diff:
      for (std::size_t j = 0; j < n; ++j)
        out[j] = krow[j] * detail::tanh_one(u[j] - ui);
      break;
  }
}

void s_axpby(const double* x, const double* y, double a, double* out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double t = a * y[i];
    out[i] = x[i] + t;
  }
}

void s_rk4_combine(double* u, const double* k1, const double* k2,
                   const double* k3, const double* k4, double dt6,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double s14 = k1[i] + k4[i];
    double s23 = k2[i] + k3[i];
    double s = s14 + 2.0 * s23;
    u[i] = u[i] + dt6 * s;
  }
}

void s_sq_diff(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double d = x[i] - y[i];
    out[i] = d * d;
  }
}

const Ops kScalarOps = {
    "scalar",     s_max_abs,    s_max_abs_diff,    s_quantize_i64,
    s_fixed_accum, s_axpy_i64,  s_abs_sum_i64,     s_pos_neg_sum_i64,
    s_sin2pi,     s_vexp,       s_vtanh,           s_pair_terms,
    s_axpby,      s_rk4_combine, s_sq_diff,
};

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

}  // namespace gldp::simd
