#pragma once

// Brute-force reference implementations used to pin expected values.  These
// deliberately share no code with the library: plain double arithmetic,
// direct enumeration, no Gray codes, no fixed-point accumulation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

// max over a, b in {-1,1}^n of |(1/n^2) sum a_i b_j K_ij|, all 4^n pairs.
inline double inf_one_brute(const std::vector<double>& k, uint32_t n) {
  double best = 0.0;
  for (uint64_t am = 0; am < (uint64_t{1} << n); ++am)
    for (uint64_t bm = 0; bm < (uint64_t{1} << n); ++bm) {
      double s = 0.0;
      for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
          double ai = (am >> i) & 1 ? 1.0 : -1.0;
          double bj = (bm >> j) & 1 ? 1.0 : -1.0;
          s += ai * bj * k[i * n + j];
        }
      best = std::max(best, std::fabs(s));
    }
  return best / (double(n) * n);
}

// max over subsets S, T of |sum over S x T| / n^2.
inline double cut_brute(const std::vector<double>& k, uint32_t n) {
  double best = 0.0;
  for (uint64_t am = 0; am < (uint64_t{1} << n); ++am)
    for (uint64_t bm = 0; bm < (uint64_t{1} << n); ++bm) {
      double s = 0.0;
      for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
          if (((am >> i) & 1) && ((bm >> j) & 1)) s += k[i * n + j];
      best = std::max(best, std::fabs(s));
    }
  return best / (double(n) * n);
}

// Bilinear form (1/n^2) a^T K b.
inline double bilinear(const std::vector<double>& k, uint32_t n,
                       const std::vector<double>& a,
                       const std::vector<double>& b) {
  double s = 0.0;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) s += a[i] * b[j] * k[i * n + j];
  return s / (double(n) * n);
}

// Relative-entropy rate, direct per-cell evaluation.
inline double upsilon_brute(const std::vector<double>& v,
                            const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double a = v[i], b = w[i];
    double t1 = a == 0.0 ? 0.0 : (b == 0.0 ? INFINITY : a * std::log(a / b));
    double am = 1.0 - a, bm = 1.0 - b;
    double t2 =
        am == 0.0 ? 0.0 : (bm == 0.0 ? INFINITY : am * std::log(am / bm));
    s += t1 + t2;
  }
  return s / double(v.size());
}

}  // namespace oracle
