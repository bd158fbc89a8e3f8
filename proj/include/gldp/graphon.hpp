#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gldp/common.hpp"

namespace gldp {

inline constexpr uint32_t kRefineCap = 2048;

// Step graphon: piecewise constant on the n×n grid of cells
// Q_ij = [(i-1)/n, i/n) × [(j-1)/n, j/n), values in [0, bound].
struct StepGraphon {
  uint32_t n = 0;
  double bound = 1.0;
  std::vector<double> values;  // row-major

  StepGraphon() = default;
  StepGraphon(uint32_t n_, std::vector<double> v, double bound_ = 1.0);

  double at(uint32_t i, uint32_t j) const { return values[std::size_t(i) * n + j]; }
  static StepGraphon constant(uint32_t n, double c, double bound = 1.0);
};

// Difference of two step graphons after common refinement; values in [-B, B].
struct SignedStepKernel {
  uint32_t n = 0;
  std::vector<double> values;

  SignedStepKernel() = default;
  SignedStepKernel(uint32_t n_, std::vector<double> v);

  double at(uint32_t i, uint32_t j) const { return values[std::size_t(i) * n + j]; }
};

// Cell permutation sigma on {0..n-1}.
struct Permutation {
  std::vector<uint32_t> map;

  Permutation() = default;
  explicit Permutation(std::vector<uint32_t> m);
  static Permutation identity(uint32_t n);
  uint32_t n() const { return static_cast<uint32_t>(map.size()); }
  Permutation inverse() const;
};

// Named analytic kernel, registry strings: `constant:<c>`, `product` (xy),
// `er:<p>`.
struct AnalyticKernel {
  std::string id;
  std::function<double(double, double)> eval;
};

bool is_analytic_spec(const std::string& spec);
AnalyticKernel make_analytic_kernel(const std::string& spec);

// Cell averages over the n×n grid.  Step inputs use exact block arithmetic
// (through the common refinement when neither resolution divides the other);
// analytic inputs use order-4 tensor Gauss-Legendre per cell and must take
// values in [0,1].
StepGraphon project(const StepGraphon& w, uint32_t n);
StepGraphon project(const AnalyticKernel& w, uint32_t n);

StepGraphon refine_graphon(const StepGraphon& w, uint32_t target);
SignedStepKernel refine_kernel(const SignedStepKernel& k, uint32_t target);

// f_sigma(i,j) = f(sigma(i), sigma(j))
StepGraphon permute(const StepGraphon& w, const Permutation& sigma);
SignedStepKernel permute(const SignedStepKernel& k, const Permutation& sigma);

// f - g after common refinement.
SignedStepKernel kernel_difference(const StepGraphon& f, const StepGraphon& g);

double graphon_max(const StepGraphon& w);

}  // namespace gldp
