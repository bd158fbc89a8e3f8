#include "gldp/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gldp/grid.hpp"

#include "gldp/simd/kernels.hpp"

namespace gldp {

namespace {

constexpr double kGlNode[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
constexpr double kGlWeight[4] = {0.3478548451374538, 0.6521451548625461,
                                 0.6521451548625461, 0.3478548451374538};

}  // namespace

StepGraphon::StepGraphon(uint32_t n_, std::vector<double> v, double bound_)
    : n(n_), bound(bound_), values(std::move(v)) {
  require(n >= 1, "graphon: resolution must be positive");
  require(values.size() == std::size_t(n) * n,
          "graphon: expected n*n values");
  require(bound > 0.0 && std::isfinite(bound), "graphon: bound must be positive");
  for (double x : values)
    require(std::isfinite(x) && x >= 0.0 && x <= bound,
            "graphon: values must lie in [0, bound]");
}

StepGraphon StepGraphon::constant(uint32_t n, double c, double bound) {
  return StepGraphon(n, std::vector<double>(std::size_t(n) * n, c), bound);
}

SignedStepKernel::SignedStepKernel(uint32_t n_, std::vector<double> v)
    : n(n_), values(std::move(v)) {
  require(n >= 1, "kernel: resolution must be positive");
  require(values.size() == std::size_t(n) * n, "kernel: expected n*n values");
  for (double x : values)
    require(std::isfinite(x), "kernel: values must be finite");
}

Permutation::Permutation(std::vector<uint32_t> m) : map(std::move(m)) {
  std::vector<bool> seen(map.size(), false);
  for (uint32_t v : map) {
    require(v < map.size() && !seen[v], "permutation: mapping must be a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(uint32_t n) {
  std::vector<uint32_t> m(n);
  std::iota(m.begin(), m.end(), 0u);
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<uint32_t> inv(map.size());
  for (uint32_t i = 0; i < map.size(); ++i) inv[map[i]] = i;
  return Permutation(std::move(inv));
}

bool is_analytic_spec(const std::string& spec) {
  return spec == "product" || spec.rfind("constant:", 0) == 0 ||
         spec.rfind("er:", 0) == 0;
}

AnalyticKernel make_analytic_kernel(const std::string& spec) {
  if (spec == "product")
    return {spec, [](double x, double y) { return x * y; }};
  auto constant_of = [&](const std::string& num) {
    std::size_t pos = 0;
    double c = 0.0;
    try {
      c = std::stod(num, &pos);
    } catch (const std::exception&) {
      throw format_error("kernel registry: bad constant in '" + spec + "'");
    }
    if (pos != num.size())
      throw format_error("kernel registry: bad constant in '" + spec + "'");
    require(c >= 0.0 && c <= 1.0, "kernel registry: constant outside [0,1]");
    return c;
  };
  if (spec.rfind("constant:", 0) == 0) {
    double c = constant_of(spec.substr(9));
    return {spec, [c](double, double) { return c; }};
  }
  if (spec.rfind("er:", 0) == 0) {
    double p = constant_of(spec.substr(3));
    return {spec, [p](double, double) { return p; }};
  }
  throw format_error("kernel registry: unknown kernel '" + spec + "'");
}

StepGraphon refine_graphon(const StepGraphon& w, uint32_t target) {
  require(target % w.n == 0, "refine: target must be a multiple of n");
  uint32_t r = target / w.n;
  if (r == 1) return w;
  std::vector<double> v(std::size_t(target) * target);
  for (uint32_t i = 0; i < target; ++i)
    for (uint32_t j = 0; j < target; ++j)
      v[std::size_t(i) * target + j] = w.at(i / r, j / r);
  return StepGraphon(target, std::move(v), w.bound);
}

SignedStepKernel refine_kernel(const SignedStepKernel& k, uint32_t target) {
  require(target % k.n == 0, "refine: target must be a multiple of n");
  uint32_t r = target / k.n;
  if (r == 1) return k;
  std::vector<double> v(std::size_t(target) * target);
  for (uint32_t i = 0; i < target; ++i)
    for (uint32_t j = 0; j < target; ++j)
      v[std::size_t(i) * target + j] = k.at(i / r, j / r);
  return SignedStepKernel(target, std::move(v));
}

StepGraphon project(const StepGraphon& w, uint32_t n) {
  require(n >= 1, "project: n must be positive");
  if (n == w.n) return w;
  if (w.n % n == 0) {
    uint32_t r = w.n / n;
    std::vector<double> v(std::size_t(n) * n);
    double inv = 1.0 / (double(r) * r);
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (uint32_t a = 0; a < r; ++a)
          for (uint32_t b = 0; b < r; ++b) acc += w.at(i * r + a, j * r + b);
        v[std::size_t(i) * n + j] = acc * inv;
      }
    return StepGraphon(n, std::move(v), w.bound);
  }
  if (n % w.n == 0) return refine_graphon(w, n);
  uint32_t L = common_resolution(w.n, n, kRefineCap);
  return project(refine_graphon(w, L), n);
}

StepGraphon project(const AnalyticKernel& w, uint32_t n) {
  require(n >= 1, "project: n must be positive");
  std::vector<double> v(std::size_t(n) * n);
  double h = 1.0 / n;
  for (uint32_t i = 0; i < n; ++i) {
    double xm = (i + 0.5) * h;
    for (uint32_t j = 0; j < n; ++j) {
      double ym = (j + 0.5) * h;
      // The quadrature is anchored at the midpoint value and integrates the
      // deviation from it.  Constant kernels then project bit-exactly, which
      // point events (delta = 0 balls around a 0/1 target) rely on; for
      // everything else this is the same order-4 rule up to roundoff.
      double mid = w.eval(xm, ym);
      require(std::isfinite(mid) && mid >= -1e-12 && mid <= 1.0 + 1e-12,
              "project: analytic kernel value outside [0,1]");
      double acc = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          double val = w.eval(xm + 0.5 * h * kGlNode[a], ym + 0.5 * h * kGlNode[b]);
          require(std::isfinite(val) && val >= -1e-12 && val <= 1.0 + 1e-12,
                  "project: analytic kernel value outside [0,1]");
          acc += kGlWeight[a] * kGlWeight[b] * (val - mid);
        }
      v[std::size_t(i) * n + j] = std::clamp(mid + 0.25 * acc, 0.0, 1.0);
    }
  }
  return StepGraphon(n, std::move(v), 1.0);
}

StepGraphon permute(const StepGraphon& w, const Permutation& sigma) {
  require(sigma.n() == w.n, "permute: size mismatch");
  std::vector<double> v(std::size_t(w.n) * w.n);
  for (uint32_t i = 0; i < w.n; ++i)
    for (uint32_t j = 0; j < w.n; ++j)
      v[std::size_t(i) * w.n + j] = w.at(sigma.map[i], sigma.map[j]);
  return StepGraphon(w.n, std::move(v), w.bound);
}

SignedStepKernel permute(const SignedStepKernel& k, const Permutation& sigma) {
  require(sigma.n() == k.n, "permute: size mismatch");
  std::vector<double> v(std::size_t(k.n) * k.n);
  for (uint32_t i = 0; i < k.n; ++i)
    for (uint32_t j = 0; j < k.n; ++j)
      v[std::size_t(i) * k.n + j] = k.at(sigma.map[i], sigma.map[j]);
  return SignedStepKernel(k.n, std::move(v));
}

SignedStepKernel kernel_difference(const StepGraphon& f, const StepGraphon& g) {
  uint32_t L = common_resolution(f.n, g.n, kRefineCap);
  StepGraphon fr = refine_graphon(f, L);
  StepGraphon gr = refine_graphon(g, L);
  std::vector<double> v(std::size_t(L) * L);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = fr.values[i] - gr.values[i];
  return SignedStepKernel(L, std::move(v));
}

double graphon_max(const StepGraphon& w) {
  return simd::ops().max_abs(w.values.data(), w.values.size());
}

}  // namespace gldp
