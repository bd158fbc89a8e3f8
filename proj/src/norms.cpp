#include "gldp/norms.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>

#include "gldp/grid.hpp"

#include "gldp/rng.hpp"
#include "gldp/simd/kernels.hpp"

namespace gldp {

namespace {

using simd::i128;
using simd::ops;

// Kernel quantized to int64 with headroom so that every column sum over n
// rows and the absolute sum over n columns stay exact in int64.
struct Quant {
  uint32_t n = 0;
  int scale = 0;
  std::vector<std::int64_t> q;

  const std::int64_t* row(uint32_t i) const { return q.data() + std::size_t(i) * n; }
};

Quant quantize(const SignedStepKernel& k) {
  Quant out;
  out.n = k.n;
  double m = ops().max_abs(k.values.data(), k.values.size());
  out.scale = simd::enum_scale(m, k.n);
  out.q.resize(k.values.size());
  ops().quantize_i64(k.values.data(), k.values.size(), simd::pow2(out.scale),
                     out.q.data());
  return out;
}

NormResult result_from_raw(std::int64_t raw, const Quant& qk, BoundKind kind) {
  NormResult r;
  r.raw = raw;
  r.raw_scale = qk.scale;
  r.n = qk.n;
  r.kind = kind;
  r.value = simd::i128_to_double(raw, qk.scale) / (double(qk.n) * qk.n);
  return r;
}

std::vector<std::int8_t> signs_of(const std::vector<std::int64_t>& t) {
  std::vector<std::int8_t> b(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) b[j] = t[j] < 0 ? -1 : 1;
  return b;
}

// t = sum over i of a_i * row_i
void accumulate_rows(const Quant& qk, const std::vector<std::int8_t>& a,
                     std::vector<std::int64_t>& t) {
  std::fill(t.begin(), t.end(), 0);
  for (uint32_t i = 0; i < qk.n; ++i)
    ops().axpy_i64(t.data(), qk.row(i), qk.n, a[i]);
}

struct SignSearchState {
  std::int64_t best = -1;
  std::vector<std::int8_t> a, b;
};

// One pass of alternating sign maximization from start vector a.
void alternate_signs(const Quant& qk, std::vector<std::int8_t> a,
                     SignSearchState& s) {
  const uint32_t n = qk.n;
  std::vector<std::int64_t> t(n), si(n);
  std::int64_t cur = -1;
  for (int iter = 0; iter < 1000; ++iter) {
    accumulate_rows(qk, a, t);
    std::int64_t val = ops().abs_sum_i64(t.data(), n);
    if (val <= cur) break;
    cur = val;
    if (cur > s.best) {
      s.best = cur;
      s.a = a;
      s.b = signs_of(t);
    }
    std::vector<std::int8_t> b = signs_of(t);
    for (uint32_t i = 0; i < n; ++i) {
      const std::int64_t* r = qk.row(i);
      std::int64_t acc = 0;
      for (uint32_t j = 0; j < n; ++j) acc += b[j] < 0 ? -r[j] : r[j];
      si[i] = acc;
    }
    for (uint32_t i = 0; i < n; ++i) a[i] = si[i] < 0 ? -1 : 1;
  }
}

std::int64_t inf_one_heuristic_raw(const Quant& qk, const HeuristicConfig& cfg,
                                   std::vector<std::int8_t>* wa,
                                   std::vector<std::int8_t>* wb) {
  require(cfg.restarts >= 1, "norm heuristic: restarts must be positive");
  const uint32_t n = qk.n;
  SignSearchState s;
  for (uint32_t r = 0; r < cfg.restarts; ++r) {
    std::vector<std::int8_t> a(n, 1);
    if (r > 0) {
      Rng rng(replica_seed(cfg.seed, r));
      for (auto& x : a) x = (rng.next_u64() & 1) ? 1 : -1;
    }
    alternate_signs(qk, a, s);
  }
  if (wa) *wa = s.a;
  if (wb) *wb = s.b;
  return s.best;
}

std::int64_t inf_one_exact_raw(const Quant& qk, std::vector<std::int8_t>* wa,
                               std::vector<std::int8_t>* wb) {
  const uint32_t n = qk.n;
  std::vector<std::int8_t> a(n, 1);
  std::vector<std::int64_t> t(n);
  accumulate_rows(qk, a, t);
  std::int64_t best = ops().abs_sum_i64(t.data(), n);
  std::vector<std::int8_t> besta = a;
  std::vector<std::int64_t> bestt = t;
  // Gray code over a[1..n-1]; a[0] fixed by the a -> -a symmetry.
  const std::uint64_t total = n >= 1 ? (std::uint64_t{1} << (n - 1)) : 1;
  for (std::uint64_t g = 1; g < total; ++g) {
    uint32_t bit = static_cast<uint32_t>(std::countr_zero(g)) + 1;
    a[bit] = static_cast<std::int8_t>(-a[bit]);
    ops().axpy_i64(t.data(), qk.row(bit), n, 2 * std::int64_t{a[bit]});
    std::int64_t val = ops().abs_sum_i64(t.data(), n);
    if (val > best) {
      best = val;
      besta = a;
      bestt = t;
    }
  }
  if (wa) *wa = besta;
  if (wb) *wb = signs_of(bestt);
  return best;
}

struct CutSearchState {
  std::int64_t best = -1;
  std::vector<std::int8_t> a, b;
};

void cut_record(const Quant& qk, const std::vector<std::int8_t>& a,
                const std::vector<std::int64_t>& t, CutSearchState& s) {
  std::int64_t pos, neg;
  ops().pos_neg_sum_i64(t.data(), qk.n, &pos, &neg);
  std::int64_t val = pos > neg ? pos : neg;
  if (val > s.best) {
    s.best = val;
    s.a = a;
    s.b.assign(qk.n, 0);
    for (uint32_t j = 0; j < qk.n; ++j)
      s.b[j] = (pos > neg ? t[j] > 0 : t[j] < 0) ? 1 : 0;
  }
}

std::int64_t cut_exact_raw(const Quant& qk, std::vector<std::int8_t>* wa,
                           std::vector<std::int8_t>* wb) {
  const uint32_t n = qk.n;
  std::vector<std::int8_t> a(n, 0);
  std::vector<std::int64_t> t(n, 0);
  CutSearchState s;
  cut_record(qk, a, t, s);  // empty S
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < total; ++g) {
    uint32_t bit = static_cast<uint32_t>(std::countr_zero(g));
    a[bit] = static_cast<std::int8_t>(1 - a[bit]);
    ops().axpy_i64(t.data(), qk.row(bit), n, a[bit] ? 1 : -1);
    cut_record(qk, a, t, s);
  }
  if (wa) *wa = s.a;
  if (wb) *wb = s.b;
  return s.best;
}

std::int64_t cut_heuristic_raw(const Quant& qk, const HeuristicConfig& cfg,
                               std::vector<std::int8_t>* wa,
                               std::vector<std::int8_t>* wb) {
  require(cfg.restarts >= 1, "norm heuristic: restarts must be positive");
  const uint32_t n = qk.n;
  CutSearchState s;
  std::vector<std::int64_t> t(n), si(n);
  for (int dir : {1, -1}) {
    for (uint32_t r = 0; r < cfg.restarts; ++r) {
      std::vector<std::int8_t> a(n, 1);
      if (r > 0) {
        Rng rng(replica_seed(cfg.seed ^ (dir > 0 ? 0 : 0x80), r));
        for (auto& x : a) x = (rng.next_u64() & 1) ? 1 : 0;
      }
      std::int64_t cur = -1;
      for (int iter = 0; iter < 1000; ++iter) {
        std::fill(t.begin(), t.end(), 0);
        for (uint32_t i = 0; i < n; ++i)
          if (a[i]) ops().axpy_i64(t.data(), qk.row(i), n, 1);
        std::int64_t val = 0;
        for (uint32_t j = 0; j < n; ++j)
          if (dir * t[j] > 0) val += dir * t[j];
        cut_record(qk, a, t, s);
        if (val <= cur) break;
        cur = val;
        std::vector<std::int8_t> b(n, 0);
        for (uint32_t j = 0; j < n; ++j) b[j] = dir * t[j] > 0 ? 1 : 0;
        for (uint32_t i = 0; i < n; ++i) {
          const std::int64_t* row = qk.row(i);
          std::int64_t acc = 0;
          for (uint32_t j = 0; j < n; ++j)
            if (b[j]) acc += row[j];
          si[i] = acc;
        }
        for (uint32_t i = 0; i < n; ++i) a[i] = dir * si[i] > 0 ? 1 : 0;
      }
    }
  }
  if (wa) *wa = s.a;
  if (wb) *wb = s.b;
  return s.best;
}

}  // namespace

NormResult inf_one_norm(const SignedStepKernel& k, NormMode mode,
                        const HeuristicConfig& cfg) {
  Quant qk = quantize(k);
  if (mode == NormMode::exact) {
    require(k.n <= kExactNormCap,
            "inf_one_norm: exact mode limited to n <= 22");
    NormResult r;
    std::vector<std::int8_t> a, b;
    std::int64_t raw = inf_one_exact_raw(qk, &a, &b);
    r = result_from_raw(raw, qk, BoundKind::exact);
    r.a = std::move(a);
    r.b = std::move(b);
    return r;
  }
  std::vector<std::int8_t> a, b;
  std::int64_t raw = inf_one_heuristic_raw(qk, cfg, &a, &b);
  NormResult r = result_from_raw(raw, qk, BoundKind::lower_bound);
  r.a = std::move(a);
  r.b = std::move(b);
  return r;
}

NormResult cut_norm(const SignedStepKernel& k, NormMode mode,
                    const HeuristicConfig& cfg) {
  Quant qk = quantize(k);
  std::vector<std::int8_t> a, b;
  if (mode == NormMode::exact) {
    require(k.n <= kExactNormCap, "cut_norm: exact mode limited to n <= 22");
    std::int64_t raw = cut_exact_raw(qk, &a, &b);
    NormResult r = result_from_raw(raw, qk, BoundKind::exact);
    r.a = std::move(a);
    r.b = std::move(b);
    return r;
  }
  std::int64_t raw = cut_heuristic_raw(qk, cfg, &a, &b);
  NormResult r = result_from_raw(raw, qk, BoundKind::lower_bound);
  r.a = std::move(a);
  r.b = std::move(b);
  return r;
}

NormResult d_inf_one(const StepGraphon& f, const StepGraphon& g, NormMode mode,
                     const HeuristicConfig& cfg) {
  return inf_one_norm(kernel_difference(f, g), mode, cfg);
}

namespace {

// Deterministic single-start alternating objective used while searching over
// permutations.  qf, qg share one quantization scale, so values are exactly
// comparable across candidate permutations.
std::int64_t swap_objective(const std::vector<std::int64_t>& qf,
                            const std::vector<std::int64_t>& qg, uint32_t n,
                            const std::vector<uint32_t>& sigma,
                            std::vector<std::int64_t>& diff) {
  for (uint32_t i = 0; i < n; ++i) {
    const std::int64_t* frow = qf.data() + std::size_t(sigma[i]) * n;
    const std::int64_t* grow = qg.data() + std::size_t(i) * n;
    std::int64_t* drow = diff.data() + std::size_t(i) * n;
    for (uint32_t j = 0; j < n; ++j) drow[j] = frow[sigma[j]] - grow[j];
  }
  Quant qk;
  qk.n = n;
  qk.scale = 0;  // unused by the search; raw values compared directly
  qk.q = std::move(diff);
  SignSearchState s;
  alternate_signs(qk, std::vector<std::int8_t>(n, 1), s);
  diff = std::move(qk.q);
  return s.best;
}

std::vector<uint32_t> argsort_by_degree(const StepGraphon& w) {
  std::vector<double> deg(w.n, 0.0);
  for (uint32_t i = 0; i < w.n; ++i)
    for (uint32_t j = 0; j < w.n; ++j) deg[i] += w.at(i, j) + w.at(j, i);
  std::vector<uint32_t> idx(w.n);
  std::iota(idx.begin(), idx.end(), 0u);
  std::stable_sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
    return deg[a] < deg[b] || (deg[a] == deg[b] && a < b);
  });
  return idx;
}

SignedStepKernel permuted_difference(const StepGraphon& fr,
                                     const StepGraphon& gr,
                                     const std::vector<uint32_t>& sigma) {
  const uint32_t n = fr.n;
  std::vector<double> v(std::size_t(n) * n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      v[std::size_t(i) * n + j] = fr.at(sigma[i], sigma[j]) - gr.at(i, j);
  return SignedStepKernel(n, std::move(v));
}

}  // namespace

QuotientResult delta_inf_one(const StepGraphon& f, const StepGraphon& g,
                             NormMode mode, const QuotientConfig& cfg) {
  uint32_t L = common_resolution(f.n, g.n, kRefineCap);
  StepGraphon fr = refine_graphon(f, L);
  StepGraphon gr = refine_graphon(g, L);

  if (mode == NormMode::exact) {
    require(L <= kExactQuotientCap,
            "delta_inf_one: exact mode limited to common resolution <= 8");
    std::vector<uint32_t> sigma(L);
    std::iota(sigma.begin(), sigma.end(), 0u);
    NormResult best;
    std::vector<uint32_t> best_sigma;
    bool first = true;
    do {
      NormResult d =
          inf_one_norm(permuted_difference(fr, gr, sigma), NormMode::exact);
      if (first || d.value < best.value) {
        best = d;
        best_sigma = sigma;
        first = false;
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return {best, Permutation(best_sigma)};
  }

  // Degree-sorting initialization.
  std::vector<uint32_t> forder = argsort_by_degree(fr);
  std::vector<uint32_t> gorder = argsort_by_degree(gr);
  std::vector<uint32_t> sigma(L);
  for (uint32_t k = 0; k < L; ++k) sigma[gorder[k]] = forder[k];

  // One shared quantization for the swap search.
  double m = ops().max_abs(fr.values.data(), fr.values.size()) +
             ops().max_abs(gr.values.data(), gr.values.size());
  int scale = simd::enum_scale(m, L);
  std::vector<std::int64_t> qf(fr.values.size()), qg(gr.values.size());
  ops().quantize_i64(fr.values.data(), fr.values.size(), simd::pow2(scale),
                     qf.data());
  ops().quantize_i64(gr.values.data(), gr.values.size(), simd::pow2(scale),
                     qg.data());

  std::vector<std::int64_t> diff(std::size_t(L) * L);
  std::int64_t cur = swap_objective(qf, qg, L, sigma, diff);
  for (uint32_t pass = 0; pass < cfg.sweeps; ++pass) {
    bool improved = false;
    for (uint32_t i = 0; i + 1 < L; ++i)
      for (uint32_t j = i + 1; j < L; ++j) {
        std::swap(sigma[i], sigma[j]);
        std::int64_t val = swap_objective(qf, qg, L, sigma, diff);
        if (val < cur) {
          cur = val;
          improved = true;
        } else {
          std::swap(sigma[i], sigma[j]);
        }
      }
    if (!improved) break;
  }

  SignedStepKernel dk = permuted_difference(fr, gr, sigma);
  NormResult final_d;
  if (L <= kExactNormCap) {
    final_d = inf_one_norm(dk, NormMode::exact);
    final_d.kind = BoundKind::upper_bound;
  } else {
    final_d = inf_one_norm(dk, NormMode::heuristic, cfg.norm);
    final_d.kind = BoundKind::estimate;
  }
  return {final_d, Permutation(sigma)};
}

}  // namespace gldp
