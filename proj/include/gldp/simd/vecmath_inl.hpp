#pragma once

// Elementary function evaluation shared by the scalar reference kernels and
// the vector kernels.  The routines are templates over a lane pack type; the
// scalar pack below and the AVX2 pack in kernels_avx2.cpp expose the same
// operation set, so both instantiations perform the identical sequence of
// IEEE operations per lane and produce bitwise identical results.
//
// Pack requirements:
//   static P splat(double)
//   static P load(const double*)            void store(double*) const
//   operator+ - * /
//   static P fma(a, b, c)                   fused a*b + c
//   static P rint(a)                        round to nearest even
//   static P abs(a)
//   static P copysign_val(mag, sgn)         |mag| with sign of sgn
//   static P lt_mask(a, b)                  all-ones lane bits where a < b
//   static P blend(mask, a, b)              mask ? a : b per lane
//   static P min(a, b), max(a, b)
//   static P exp2_int(k)                    2^k for integer-valued k in double

#include <cstdint>
#include <limits>

namespace gldp::simd {

namespace coef {

// sin(2 pi t) = t * sum c[k] t^(2k), |t| <= 1/4, truncation < 1.3e-18
inline constexpr double kSin2Pi[11] = {
    6.283185307179586476925,   -41.34170224039976023397,
    81.6052492760750542034,    -76.70585975306138584163,
    42.05869394489765314499,   -15.09464257682299039183,
    3.819952584848282127734,   -0.7181223017785005122317,
    0.1042291622081398411727,  -0.0120315859421206272332,
    0.00113092374825179618777,
};

// exp(r) = sum r^k / k!, |r| <= ln2/2, truncation < 1.7e-16
inline constexpr double kExp[13] = {
    1.0,
    1.0,
    0.5,
    0.1666666666666666666667,
    0.04166666666666666666667,
    0.008333333333333333333333,
    0.001388888888888888888889,
    0.0001984126984126984126984,
    0.0000248015873015873015873,
    0.000002755731922398589065256,
    2.755731922398589065256e-7,
    2.505210838544171877505e-8,
    2.087675698786809897921e-9,
};

// tanh(x) = x * sum c[k] x^(2k), |x| <= 1/2, truncation < 6e-19
inline constexpr double kTanh[18] = {
    1.0,
    -0.3333333333333333333333,
    0.1333333333333333333333,
    -0.05396825396825396825397,
    0.02186948853615520282187,
    -0.008863235529902196568863,
    0.003592128036572481016925,
    -0.001455834387051318268249,
    0.0005900274409455859813781,
    -0.0002391291142435524814857,
    0.00009691537956929450325596,
    -0.00003927832388331683405337,
    0.00001591890506932896474074,
    -0.000006451689215655430763191,
    0.000002614771151290754554264,
    -0.000001059726832010465435091,
    4.29491107827380585482e-7,
    -1.740661896357164777986e-7,
};

inline constexpr double kLog2E = 1.4426950408889634073599;
// ln2 split so that k*kLn2Hi is exact for |k| < 2^26
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;

}  // namespace coef

// sin(2 pi x).  Reduce x to r = x - rint(x) in [-1/2, 1/2], fold the outer
// half range back onto [0, 1/4] using sin(2 pi r) = sign(r) sin(2 pi (1/2 -
// |r|)), and evaluate the odd polynomial.  Exact for x = 0; |x| must be
// below 2^51 for the reduction to hold.
template <class P>
inline P sin2pi_p(P x) {
  P r = x - P::rint(x);
  P a = P::abs(r);
  P q = P::splat(0.25);
  P folded = P::blend(P::lt_mask(q, a), P::splat(0.5) - a, a);
  P t = P::copysign_val(folded, r);
  P t2 = t * t;
  P p = P::splat(coef::kSin2Pi[10]);
  for (int k = 9; k >= 0; --k) p = P::fma(p, t2, P::splat(coef::kSin2Pi[k]));
  return t * p;
}

// exp(x) with the usual 2^k * exp(r) splitting.  Full accuracy for
// |x| <= 700; beyond that the scale clamp degrades the last decade before
// the overflow/underflow thresholds, and inputs past those saturate to
// inf / 0 via the final blends.
template <class P>
inline P exp_p(P x) {
  const P hi = P::splat(709.782712893384);
  const P lo = P::splat(-745.1332191019412);
  P xc = P::min(P::max(x, P::splat(-746.0)), P::splat(710.0));
  P k = P::rint(xc * P::splat(coef::kLog2E));
  P kc = P::min(P::max(k, P::splat(-1021.0)), P::splat(1021.0));
  P r = P::fma(kc, P::splat(-coef::kLn2Hi), xc);
  r = P::fma(kc, P::splat(-coef::kLn2Lo), r);
  P p = P::splat(coef::kExp[12]);
  for (int j = 11; j >= 0; --j) p = P::fma(p, r, P::splat(coef::kExp[j]));
  P result = p * P::exp2_int(kc);
  const double inf = std::numeric_limits<double>::infinity();
  result = P::blend(P::lt_mask(hi, x), P::splat(inf), result);
  result = P::blend(P::lt_mask(x, lo), P::splat(0.0), result);
  return result;
}

// tanh(x): odd polynomial on |x| <= 1/2, else 1 - 2/(exp(2|x|) + 1) with the
// sign restored.  Saturates to +-1 beyond |x| = 20.
template <class P>
inline P tanh_p(P x) {
  P a = P::abs(x);
  P x2 = x * x;
  P ps = P::splat(coef::kTanh[17]);
  for (int k = 16; k >= 0; --k) ps = P::fma(ps, x2, P::splat(coef::kTanh[k]));
  P small = x * ps;

  P ac = P::min(a, P::splat(20.0));
  P e = exp_p<P>(ac + ac);
  P big = P::splat(1.0) - P::splat(2.0) / (e + P::splat(1.0));
  big = P::copysign_val(big, x);

  return P::blend(P::lt_mask(a, P::splat(0.5)), small, big);
}

}  // namespace gldp::simd
