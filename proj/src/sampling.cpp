#include "gldp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "gldp/common.hpp"

namespace gldp {

AdjacencyGraph::AdjacencyGraph(uint32_t n_, bool directed_, double alpha_,
                               uint64_t seed_, std::string source_)
    : n(n_),
      bits(std::size_t(n_) * n_, 0),
      directed(directed_),
      alpha(alpha_),
      seed(seed_),
      source(std::move(source_)) {
  require(n > 0, "adjacency graph needs n >= 1");
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0,1]");
}

uint64_t AdjacencyGraph::edge_count() const {
  return std::accumulate(bits.begin(), bits.end(), uint64_t{0});
}

namespace {

// One Bernoulli draw per pair from the counter stream of (seed, i*n+j).
uint8_t pair_bit(uint64_t seed, uint64_t idx, double p) {
  return counter_unit(seed, idx) < p ? 1 : 0;
}

}  // namespace

AdjacencyGraph sample_w_random(const StepGraphon& wn, uint64_t seed,
                               bool directed) {
  require(wn.bound == 1.0, "sampling kernel must have bound 1");
  uint32_t n = wn.n;
  AdjacencyGraph g(n, directed, 1.0,
                   seed, (directed ? "dense:" : "undirected:") +
                             std::to_string(n));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = directed ? 0 : i; j < n; ++j) {
      uint64_t idx = uint64_t(i) * n + j;
      uint8_t b = pair_bit(seed, idx, wn.at(i, j));
      g.bits[idx] = b;
      if (!directed) g.bits[uint64_t(j) * n + i] = b;
    }
  return g;
}

AdjacencyGraph sample_sparse(const StepGraphon& wn, double alpha,
                             uint64_t seed) {
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0,1]");
  uint32_t n = wn.n;
  for (double v : wn.values)
    require(alpha * v <= 1.0, "alpha * W exceeds 1 on a cell");
  AdjacencyGraph g(n, true, alpha, seed, "sparse:" + std::to_string(n));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      uint64_t idx = uint64_t(i) * n + j;
      g.bits[idx] = pair_bit(seed, idx, alpha * wn.at(i, j));
    }
  return g;
}

namespace {

// log(pw/pv) for one drawn symbol with probabilities pv (sampling measure)
// and pw (target measure).
double symbol_log_ratio(double pw, double pv) {
  if (pv == 0.0 && pw == 0.0) return 0.0;
  if (pw == 0.0) return -kInf;
  if (pv == 0.0) return kInf;
  return std::log(pw / pv);
}

}  // namespace

double tilted_log_weight(const AdjacencyGraph& g, const StepGraphon& vn,
                         const StepGraphon& wn) {
  require(vn.n == g.n && wn.n == g.n,
          "tilted weight needs kernels at the sample resolution");
  double acc = 0.0;
  bool neg_inf = false, pos_inf = false;
  for (uint32_t i = 0; i < g.n; ++i)
    for (uint32_t j = 0; j < g.n; ++j) {
      double v = vn.at(i, j), w = wn.at(i, j);
      double term = g.at(i, j) ? symbol_log_ratio(w, v)
                               : symbol_log_ratio(1.0 - w, 1.0 - v);
      if (term == -kInf) {
        neg_inf = true;
      } else if (term == kInf) {
        pos_inf = true;
      } else {
        acc += term;
      }
    }
  if (neg_inf) return -kInf;
  if (pos_inf) return kInf;
  return acc;
}

TiltedSample sample_tilted(const StepGraphon& vn, const StepGraphon& wn,
                           uint64_t seed) {
  require(vn.bound == 1.0 && wn.bound == 1.0,
          "tilted sampling needs bound-1 kernels");
  require(vn.n == wn.n, "tilted sampling needs equal resolutions");
  uint32_t n = vn.n;
  AdjacencyGraph g(n, true, 1.0, seed, "tilted:" + std::to_string(n));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      uint64_t idx = uint64_t(i) * n + j;
      g.bits[idx] = pair_bit(seed, idx, vn.at(i, j));
    }
  double lw = tilted_log_weight(g, vn, wn);
  return {std::move(g), lw};
}

StepGraphon embed(const AdjacencyGraph& g, bool rescale) {
  std::vector<double> v(g.bits.size());
  double scale = 1.0, bound = 1.0;
  if (rescale && g.alpha != 1.0) {
    scale = 1.0 / g.alpha;
    bound = scale;
  }
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = scale * g.bits[i];
  return StepGraphon(g.n, std::move(v), bound);
}

FiniteLaw::FiniteLaw(std::vector<double> atoms_, std::vector<double> probs_)
    : atoms(std::move(atoms_)), probs(std::move(probs_)) {
  require(!atoms.empty() && atoms.size() == probs.size(),
          "law needs matching nonempty atom and probability lists");
  double total = 0.0;
  for (double a : atoms)
    require(std::isfinite(a), "law atoms must be finite");
  for (double p : probs) {
    require(p >= 0.0, "law probabilities must be nonnegative");
    total += p;
  }
  require(std::fabs(total - 1.0) <= 1e-9, "law probabilities must sum to 1");
  for (double& p : probs) p /= total;
}

double FiniteLaw::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) m += atoms[i] * probs[i];
  return m;
}

double FiniteLaw::min_atom() const {
  return *std::min_element(atoms.begin(), atoms.end());
}

double FiniteLaw::max_atom() const {
  return *std::max_element(atoms.begin(), atoms.end());
}

double FiniteLaw::max_abs() const {
  return std::max(std::fabs(min_atom()), std::fabs(max_atom()));
}

double FiniteLaw::sample(Rng& rng) const {
  double u = rng.next_unit();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
    acc += probs[i];
    if (u < acc) return atoms[i];
  }
  return atoms.back();
}

FiniteLaw FiniteLaw::point(double a) { return FiniteLaw({a}, {1.0}); }

FiniteLaw FiniteLaw::uniform(std::vector<double> atoms_) {
  std::vector<double> p(atoms_.size(), 1.0 / double(atoms_.size()));
  return FiniteLaw(std::move(atoms_), std::move(p));
}

IcSpec deterministic_ic(std::function<double(double)> g) {
  IcSpec s;
  s.kind = IcSpec::Kind::deterministic;
  s.g = std::move(g);
  return s;
}

IcSpec lipschitz_ic(double m, uint64_t seed) {
  IcSpec s;
  s.kind = IcSpec::Kind::lipschitz;
  s.lipschitz_m = m;
  s.seed = seed;
  return s;
}

IcSpec convolved_ic(const FiniteLaw& mu, double rho, uint64_t seed) {
  IcSpec s;
  s.kind = IcSpec::Kind::convolved;
  s.mu_atoms = mu.atoms;
  s.mu_probs = mu.probs;
  s.rho = rho;
  s.seed = seed;
  return s;
}

namespace {

constexpr uint32_t kFineFactor = 16;

InitialCondition deterministic_condition(const IcSpec& spec, uint32_t n) {
  require(bool(spec.g), "deterministic initial condition needs a function");
  return {grid_from_function(spec.g, kFineFactor * n),
          grid_from_function(spec.g, n)};
}

// Reflect into [0,1]; 1-Lipschitz, so reflected increments never exceed the
// raw slope bound.
double reflect_unit(double x) {
  x = std::fabs(x);
  double r = std::fmod(x, 2.0);
  return r <= 1.0 ? r : 2.0 - r;
}

InitialCondition lipschitz_condition(const IcSpec& spec, uint32_t n) {
  double m = spec.lipschitz_m;
  require(m >= 0.0 && std::isfinite(m), "Lipschitz constant must be finite");
  uint32_t fine = kFineFactor * n;
  Rng rng(spec.seed);
  std::vector<double> knots(fine + 1);
  knots[0] = rng.next_unit();
  for (uint32_t k = 0; k < fine; ++k) {
    double slope = rng.next_uniform(-m, m);
    knots[k + 1] = reflect_unit(knots[k] + slope / fine);
  }
  std::vector<double> v(fine);
  for (uint32_t k = 0; k < fine; ++k) v[k] = 0.5 * (knots[k] + knots[k + 1]);
  GridFunction f(fine, std::move(v));
  GridFunction c = coarsen_grid(f, n);
  return {std::move(f), std::move(c)};
}

// Unit-mass discrete bump of half-width rho on a periodic grid of size fine.
std::vector<double> bump_weights(double rho, uint32_t fine) {
  int64_t taps = int64_t(std::floor(rho * fine));
  std::vector<double> w;
  w.reserve(std::size_t(2 * taps + 1));
  double total = 0.0;
  for (int64_t k = -taps; k <= taps; ++k) {
    double t = double(k) / (rho * fine);
    double val = std::fabs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
    w.push_back(val);
    total += val;
  }
  for (double& x : w) x /= total;
  return w;
}

InitialCondition convolved_condition(const IcSpec& spec, uint32_t n) {
  require(spec.rho > 0.0, "bump half-width must be positive");
  FiniteLaw mu(spec.mu_atoms, spec.mu_probs);
  uint64_t fine64 = uint64_t(n) * n;
  require(fine64 <= (1u << 20), "convolved fine grid too large");
  uint32_t fine = uint32_t(fine64);
  Rng rng(spec.seed);
  std::vector<double> h(fine);
  for (double& x : h) x = mu.sample(rng);

  std::vector<double> w = bump_weights(spec.rho, fine);
  int64_t taps = (int64_t(w.size()) - 1) / 2;
  std::vector<double> v(fine, 0.0);
  for (uint32_t i = 0; i < fine; ++i) {
    double acc = 0.0;
    for (int64_t k = -taps; k <= taps; ++k) {
      int64_t j = (int64_t(i) + k) % int64_t(fine);
      if (j < 0) j += fine;
      acc += w[std::size_t(k + taps)] * h[std::size_t(j)];
    }
    v[i] = acc;
  }
  GridFunction f(fine, std::move(v));
  GridFunction c = coarsen_grid(f, n);
  return {std::move(f), std::move(c)};
}

}  // namespace

InitialCondition make_initial_condition(const IcSpec& spec, uint32_t n) {
  require(n > 0, "initial condition needs n >= 1");
  switch (spec.kind) {
    case IcSpec::Kind::deterministic:
      return deterministic_condition(spec, n);
    case IcSpec::Kind::lipschitz:
      return lipschitz_condition(spec, n);
    case IcSpec::Kind::convolved:
      return convolved_condition(spec, n);
  }
  throw domain_error("unknown initial condition kind");
}

GridFunction make_parameters(const FiniteLaw& mu, uint32_t n, uint64_t seed,
                             double rho) {
  return make_initial_condition(convolved_ic(mu, rho, seed), n).coarse;
}

}  // namespace gldp
