#include "gldp/rates.hpp"

#include <algorithm>
#include <cmath>

#include "gldp/common.hpp"
#include "gldp/simd/kernels.hpp"

namespace gldp {

namespace {

// v log(v/w), 0 log(anything) = 0, positive mass on a null cell = inf.
double entropy_term(double v, double w) {
  if (v == 0.0) return 0.0;
  if (w == 0.0) return kInf;
  return v * std::log(v / w);
}

// Per-cell Bernoulli relative entropy.
double cell_entropy(double v, double w) {
  double a = entropy_term(v, w);
  if (a == kInf) return kInf;
  double b = entropy_term(1.0 - v, 1.0 - w);
  if (b == kInf) return kInf;
  return a + b;
}

double mean_fixed(const std::vector<double>& terms) {
  double total = simd::fixed_sum(terms.data(), terms.size());
  return total / double(terms.size());
}

}  // namespace

RateReport upsilon(const StepGraphon& v, const StepGraphon& w) {
  require(v.bound == 1.0 && w.bound == 1.0, "upsilon needs bound-1 kernels");
  uint32_t L = common_resolution(v.n, w.n, kRefineCap);
  StepGraphon vr = refine_graphon(v, L);
  StepGraphon wr = refine_graphon(w, L);
  std::vector<double> terms(std::size_t(L) * L);
  for (std::size_t c = 0; c < terms.size(); ++c) {
    terms[c] = cell_entropy(vr.values[c], wr.values[c]);
    if (terms[c] == kInf) return {kInf, RateMode::exact, std::nullopt};
  }
  return {mean_fixed(terms), RateMode::exact, std::nullopt};
}

namespace {

// upsilon with v relabeled by sigma, plain summation (heuristic search
// internals; the reported value is recomputed with upsilon()).
double upsilon_at(const StepGraphon& v, const StepGraphon& w,
                  const std::vector<uint32_t>& sigma) {
  uint32_t n = v.n;
  double acc = 0.0;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      double t = cell_entropy(v.at(sigma[i], sigma[j]), w.at(i, j));
      if (t == kInf) return kInf;
      acc += t;
    }
  return acc / (double(n) * n);
}

}  // namespace

RateReport rate_quotient(const StepGraphon& v, const StepGraphon& w,
                         NormMode mode, const HeuristicConfig& cfg) {
  require(v.n == w.n, "quotient rate needs equal resolutions");
  require(v.bound == 1.0 && w.bound == 1.0, "quotient rate needs bound 1");
  uint32_t n = v.n;

  if (mode == NormMode::exact) {
    require(n <= 8, "exact quotient rate needs n <= 8");
    std::vector<uint32_t> sigma(n), best(n);
    for (uint32_t i = 0; i < n; ++i) sigma[i] = i;
    best = sigma;
    double bv = upsilon_at(v, w, sigma);
    while (std::next_permutation(sigma.begin(), sigma.end())) {
      double val = upsilon_at(v, w, sigma);
      if (val < bv) {
        bv = val;
        best = sigma;
      }
    }
    return {upsilon(permute(v, Permutation(best)), w).value, RateMode::exact,
            Permutation(best)};
  }

  require(cfg.restarts >= 1, "heuristic needs at least one restart");
  std::vector<uint32_t> best;
  double best_val = kInf;
  for (uint32_t restart = 0; restart < cfg.restarts; ++restart) {
    std::vector<uint32_t> sigma(n);
    for (uint32_t i = 0; i < n; ++i) sigma[i] = i;
    if (restart == 0) {
      // match rows by degree
      std::vector<double> dv(n, 0.0), dw(n, 0.0);
      for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
          dv[i] += v.at(i, j);
          dw[i] += w.at(i, j);
        }
      std::vector<uint32_t> ov(n), ow(n);
      for (uint32_t i = 0; i < n; ++i) ov[i] = ow[i] = i;
      std::stable_sort(ov.begin(), ov.end(),
                       [&](uint32_t a, uint32_t b) { return dv[a] < dv[b]; });
      std::stable_sort(ow.begin(), ow.end(),
                       [&](uint32_t a, uint32_t b) { return dw[a] < dw[b]; });
      for (uint32_t k = 0; k < n; ++k) sigma[ow[k]] = ov[k];
    } else {
      Rng rng(replica_seed(cfg.seed, restart));
      for (uint32_t i = n; i > 1; --i)
        std::swap(sigma[i - 1], sigma[rng.next_below(i)]);
    }
    double cur = upsilon_at(v, w, sigma);
    bool improved = true;
    while (improved) {
      improved = false;
      for (uint32_t i = 0; i < n && cur > 0.0; ++i)
        for (uint32_t j = i + 1; j < n; ++j) {
          std::swap(sigma[i], sigma[j]);
          double val = upsilon_at(v, w, sigma);
          if (val < cur - 1e-15) {
            cur = val;
            improved = true;
          } else {
            std::swap(sigma[i], sigma[j]);
          }
        }
    }
    if (cur < best_val) {
      best_val = cur;
      best = sigma;
    }
  }
  Permutation sig(best);
  double value =
      best_val == kInf ? kInf : upsilon(permute(v, sig), w).value;
  return {value, RateMode::heuristic_upper, std::move(sig)};
}

double poisson_ell(double z) {
  require(z >= 0.0, "ell is defined on [0, inf)");
  if (z == 0.0) return 1.0;
  return z * std::log(z) - z + 1.0;
}

RateReport sparse_rate(const StepGraphon& v, const StepGraphon& w) {
  require(w.bound == 1.0, "sparse rate needs a bound-1 target");
  uint32_t L = common_resolution(v.n, w.n, kRefineCap);
  StepGraphon vr = refine_graphon(v, L);
  StepGraphon wr = refine_graphon(w, L);
  std::vector<double> terms(std::size_t(L) * L);
  for (std::size_t c = 0; c < terms.size(); ++c) {
    double vv = vr.values[c], ww = wr.values[c];
    if (ww == 0.0) {
      if (vv != 0.0) return {kInf, RateMode::exact, std::nullopt};
      terms[c] = 0.0;
    } else {
      terms[c] = ww * poisson_ell(vv / ww);
    }
  }
  return {mean_fixed(terms), RateMode::exact, std::nullopt};
}

double bernstein_h(double u) {
  require(u >= 0.0, "h is used on [0, inf)");
  return (1.0 + u) * std::log1p(u) - u;
}

double bernstein_bound(uint64_t n_terms, double c, double delta) {
  require(n_terms >= 1, "need at least one term");
  require(c > 0.0 && delta > 0.0, "c and delta must be positive");
  return std::exp(-double(n_terms) * bernstein_h(delta / c));
}

namespace {

// log E exp(a X) via a shifted sum for stability.
double cumulant(const FiniteLaw& mu, double a) {
  double m = -kInf;
  for (double x : mu.atoms) m = std::max(m, a * x);
  double s = 0.0;
  for (std::size_t i = 0; i < mu.atoms.size(); ++i)
    s += mu.probs[i] * std::exp(a * mu.atoms[i] - m);
  return m + std::log(s);
}

double cumulant_prime(const FiniteLaw& mu, double a) {
  double m = -kInf;
  for (double x : mu.atoms) m = std::max(m, a * x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
    double e = mu.probs[i] * std::exp(a * mu.atoms[i] - m);
    num += mu.atoms[i] * e;
    den += e;
  }
  return num / den;
}

double atom_probability(const FiniteLaw& mu, double x) {
  double p = 0.0;
  for (std::size_t i = 0; i < mu.atoms.size(); ++i)
    if (mu.atoms[i] == x) p += mu.probs[i];
  return p;
}

}  // namespace

double legendre_rate(const FiniteLaw& mu, double b) {
  double lo = mu.min_atom(), hi = mu.max_atom();
  if (b < lo || b > hi) return kInf;
  if (lo == hi) return 0.0;  // point mass, b == lo
  if (b == lo || b == hi) {
    // the supremum is a limit: ab - Lambda(a) -> -log P(X = b)
    double p = atom_probability(mu, b);
    return p > 0.0 ? -std::log(p) : kInf;
  }
  // Lambda' is strictly increasing with range (lo, hi); bracket then bisect.
  double a_lo = -1.0, a_hi = 1.0;
  while (cumulant_prime(mu, a_lo) > b) a_lo *= 2.0;
  while (cumulant_prime(mu, a_hi) < b) a_hi *= 2.0;
  while (a_hi - a_lo > 1e-10) {
    double mid = 0.5 * (a_lo + a_hi);
    if (cumulant_prime(mu, mid) < b)
      a_lo = mid;
    else
      a_hi = mid;
  }
  double a = 0.5 * (a_lo + a_hi);
  return std::max(0.0, a * b - cumulant(mu, a));
}

StepGraphon clamp_graphon(const StepGraphon& w, double delta) {
  require(delta >= 0.0 && delta < 0.5, "clamp level must lie in [0, 1/2)");
  std::vector<double> v = w.values;
  for (double& x : v) x = std::min(std::max(x, delta), 1.0 - delta);
  return StepGraphon(w.n, std::move(v), w.bound);
}

double deterministic_rate(const GridFunction& g, const GridFunction& target,
                          double tol) {
  return grid_l2_distance(g, target) <= tol ? 0.0 : kInf;
}

double initial_condition_rate(const FiniteLaw& mu, const GridFunction& ell) {
  double acc = 0.0;
  for (double x : ell.values) {
    double r = legendre_rate(mu, x);
    if (r == kInf) return kInf;
    acc += r;
  }
  return acc / double(ell.n);
}

}  // namespace gldp
