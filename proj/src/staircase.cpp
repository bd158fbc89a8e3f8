#include "gldp/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gldp/common.hpp"
#include "gldp/grid.hpp"
#include "gldp/rng.hpp"

namespace gldp {

namespace {

constexpr double kMarginalTol = 1e-12;
constexpr double kTilingTol = 1e-12;

void check_marginals(uint32_t k, const std::vector<double>& m) {
  double delta = 1.0 / double(k);
  for (uint32_t i = 0; i < k; ++i) {
    double row = 0.0, col = 0.0;
    for (uint32_t j = 0; j < k; ++j) {
      row += m[std::size_t(i) * k + j];
      col += m[std::size_t(j) * k + i];
    }
    require(std::fabs(row - delta) <= kMarginalTol,
            "coupling row sum is not 1/k");
    require(std::fabs(col - delta) <= kMarginalTol,
            "coupling column sum is not 1/k");
  }
}

}  // namespace

DiscreteCoupling::DiscreteCoupling(uint32_t k_, std::vector<double> m)
    : k(k_), masses(std::move(m)) {
  require(k >= 1, "coupling needs k >= 1");
  require(masses.size() == std::size_t(k) * k, "coupling mass array size");
  for (double x : masses)
    require(x >= 0.0 && std::isfinite(x), "coupling masses must be >= 0");
  check_marginals(k, masses);
}

DiscreteCoupling DiscreteCoupling::diagonal(uint32_t k) {
  std::vector<double> m(std::size_t(k) * k, 0.0);
  for (uint32_t i = 0; i < k; ++i) m[std::size_t(i) * k + i] = 1.0 / k;
  return DiscreteCoupling(k, std::move(m));
}

DiscreteCoupling DiscreteCoupling::uniform(uint32_t k) {
  std::vector<double> m(std::size_t(k) * k, 1.0 / (double(k) * k));
  return DiscreteCoupling(k, std::move(m));
}

PiecewiseBijection::PiecewiseBijection(std::vector<Segment> segs)
    : segments(std::move(segs)) {
  require(!segments.empty(), "bijection needs at least one segment");
  for (const Segment& s : segments)
    require(s.length > 0.0 && s.start_x >= 0.0 && s.start_y >= 0.0,
            "segments need positive length and nonnegative starts");
  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) {
              return a.start_x < b.start_x;
            });
  auto check_tiling = [&](auto key, const char* axis) {
    std::vector<const Segment*> by(segments.size());
    for (std::size_t i = 0; i < by.size(); ++i) by[i] = &segments[i];
    std::sort(by.begin(), by.end(), [&](const Segment* a, const Segment* b) {
      return key(*a) < key(*b);
    });
    double cursor = 0.0;
    for (const Segment* s : by) {
      require(std::fabs(key(*s) - cursor) <= kTilingTol,
              std::string("segment ") + axis + "-projections do not tile");
      cursor = key(*s) + s->length;
    }
    require(std::fabs(cursor - 1.0) <= kTilingTol,
            std::string(axis) + "-projections do not cover [0,1)");
  };
  check_tiling([](const Segment& s) { return s.start_x; }, "x");
  check_tiling([](const Segment& s) { return s.start_y; }, "y");
}

DiscreteCoupling coupling_from_samples(
    const std::vector<std::pair<double, double>>& pairs, uint32_t k) {
  require(!pairs.empty(), "need at least one sample pair");
  require(k >= 1, "need k >= 1");
  std::vector<double> m(std::size_t(k) * k, 0.0);
  for (const auto& [x, y] : pairs) {
    require(x >= 0.0 && x < 1.0 && y >= 0.0 && y < 1.0,
            "sample pairs must lie in [0,1)^2");
    uint32_t i = uint32_t(x * k), j = uint32_t(y * k);
    m[std::size_t(i) * k + j] += 1.0;
  }
  for (uint32_t i = 0; i < k; ++i) {
    double row = 0.0, col = 0.0;
    for (uint32_t j = 0; j < k; ++j) {
      row += m[std::size_t(i) * k + j];
      col += m[std::size_t(j) * k + i];
    }
    require(row > 0.0, "empty marginal row cannot be repaired");
    require(col > 0.0, "empty marginal column cannot be repaired");
  }
  double total = std::accumulate(m.begin(), m.end(), 0.0);
  for (double& x : m) x /= total;

  // alternating marginal rescaling
  double delta = 1.0 / double(k);
  for (uint32_t iter = 0; iter < 10000; ++iter) {
    double worst = 0.0;
    for (uint32_t i = 0; i < k; ++i) {
      double row = 0.0;
      for (uint32_t j = 0; j < k; ++j) row += m[std::size_t(i) * k + j];
      double f = delta / row;
      for (uint32_t j = 0; j < k; ++j) m[std::size_t(i) * k + j] *= f;
    }
    for (uint32_t j = 0; j < k; ++j) {
      double col = 0.0;
      for (uint32_t i = 0; i < k; ++i) col += m[std::size_t(i) * k + j];
      double f = delta / col;
      for (uint32_t i = 0; i < k; ++i) m[std::size_t(i) * k + j] *= f;
      worst = std::max(worst, std::fabs(col - delta));
    }
    // run well past the 1e-12 type invariant so the final row pass leaves
    // both marginal families inside it
    if (worst <= 1e-13) {
      // one final exact row pass so both marginal families verify
      for (uint32_t i = 0; i < k; ++i) {
        double row = 0.0;
        for (uint32_t j = 0; j < k; ++j) row += m[std::size_t(i) * k + j];
        double f = delta / row;
        for (uint32_t j = 0; j < k; ++j) m[std::size_t(i) * k + j] *= f;
      }
      return DiscreteCoupling(k, std::move(m));
    }
  }
  throw domain_error("marginal rescaling did not converge");
}

DiscreteCoupling random_coupling(uint32_t k, uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(std::size_t(k) * k);
  // one synthetic sample per block with random multiplicity keeps every
  // marginal occupied
  std::vector<std::pair<double, double>> raw;
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j) {
      double weight = 0.1 + 0.9 * rng.next_unit();
      int copies = 1 + int(weight * 16.0);
      for (int c = 0; c < copies; ++c)
        raw.emplace_back((i + 0.5) / k, (j + 0.5) / k);
    }
  return coupling_from_samples(raw, k);
}

PiecewiseBijection staircase_bijection(const DiscreteCoupling& nu) {
  uint32_t k = nu.k;
  double delta = 1.0 / double(k);
  std::vector<Segment> segs;
  segs.reserve(std::size_t(k) * k);
  // col_used[j]: mass of column j consumed by rows < i
  std::vector<double> col_used(k, 0.0);
  for (uint32_t i = 0; i < k; ++i) {
    double row_used = 0.0;
    for (uint32_t j = 0; j < k; ++j) {
      double mass = nu.at(i, j);
      if (mass > 0.0) {
        segs.push_back(
            {double(i) * delta + row_used, double(j) * delta + col_used[j],
             mass});
      }
      row_used += mass;
      col_used[j] += mass;
    }
  }
  return PiecewiseBijection(std::move(segs));
}

double evaluate(const PiecewiseBijection& theta, double x) {
  require(x >= 0.0 && x < 1.0, "evaluate needs x in [0,1)");
  auto it = std::upper_bound(
      theta.segments.begin(), theta.segments.end(), x,
      [](double v, const Segment& s) { return v < s.start_x; });
  require(it != theta.segments.begin(), "x not covered by any segment");
  const Segment& s = *std::prev(it);
  require(x < s.start_x + s.length + kTilingTol, "gap in segment coverage");
  return s.start_y + (x - s.start_x);
}

std::vector<double> pushforward_blocks(const PiecewiseBijection& theta,
                                       uint32_t k) {
  require(k >= 1, "need k >= 1");
  std::vector<double> out(std::size_t(k) * k, 0.0);
  for (const Segment& s : theta.segments) {
    double t = 0.0;
    while (t < s.length - 1e-15) {
      double x = s.start_x + t, y = s.start_y + t;
      auto block = [&](double v) {
        auto b = uint32_t(v * k);
        return std::min(b, k - 1);
      };
      uint32_t bx = block(x), by = block(y);
      // distance to the next block boundary on either axis
      double nx = double(bx + 1) / k - x;
      double ny = double(by + 1) / k - y;
      double step = std::min({nx, ny, s.length - t});
      step = std::max(step, 1e-15);
      out[std::size_t(bx) * k + by] += step;
      t += step;
    }
  }
  return out;
}

DiscreteCoupling refine_coupling(const DiscreteCoupling& nu,
                                 uint32_t factor) {
  require(factor >= 1, "refinement factor must be >= 1");
  uint32_t k = nu.k, kk = k * factor;
  std::vector<double> m(std::size_t(kk) * kk);
  double inv = 1.0 / (double(factor) * factor);
  for (uint32_t i = 0; i < kk; ++i)
    for (uint32_t j = 0; j < kk; ++j)
      m[std::size_t(i) * kk + j] = nu.at(i / factor, j / factor) * inv;
  return DiscreteCoupling(kk, std::move(m));
}

DiscreteCoupling coarsen_coupling(const DiscreteCoupling& nu, uint32_t k) {
  require(k >= 1 && nu.k % k == 0, "coarse k must divide the resolution");
  uint32_t f = nu.k / k;
  std::vector<double> m(std::size_t(k) * k, 0.0);
  for (uint32_t i = 0; i < nu.k; ++i)
    for (uint32_t j = 0; j < nu.k; ++j)
      m[std::size_t(i / f) * k + j / f] += nu.at(i, j);
  return DiscreteCoupling(k, std::move(m));
}

namespace {

// Average of cos(2 pi p x) and sin(2 pi p x) over [(i)/k, (i+1)/k).
double block_avg_cos(uint32_t p, uint32_t i, uint32_t k) {
  if (p == 0) return 1.0;
  double w = 2.0 * std::numbers::pi * p;
  double a = double(i) / k, b = double(i + 1) / k;
  return (std::sin(w * b) - std::sin(w * a)) * k / w;
}

double block_avg_sin(uint32_t p, uint32_t i, uint32_t k) {
  if (p == 0) return 0.0;
  double w = 2.0 * std::numbers::pi * p;
  double a = double(i) / k, b = double(i + 1) / k;
  return (std::cos(w * a) - std::cos(w * b)) * k / w;
}

constexpr std::pair<uint32_t, uint32_t> kFrequencies[8] = {
    {0, 1}, {1, 0}, {1, 1}, {0, 2}, {2, 0}, {1, 2}, {2, 1}, {2, 2}};

// integral of trig_p(x) trig_q(y) against the coupling, with
// trig chosen per axis by the cs flags (false: cos, true: sin)
double coupling_integral(const DiscreteCoupling& nu, uint32_t p, uint32_t q,
                         bool sx, bool sy) {
  uint32_t k = nu.k;
  std::vector<double> ax(k), ay(k);
  for (uint32_t i = 0; i < k; ++i) {
    ax[i] = sx ? block_avg_sin(p, i, k) : block_avg_cos(p, i, k);
    ay[i] = sy ? block_avg_sin(q, i, k) : block_avg_cos(q, i, k);
  }
  double acc = 0.0;
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j) acc += nu.at(i, j) * ax[i] * ay[j];
  return acc;
}

}  // namespace

double weak_distance(const DiscreteCoupling& a, const DiscreteCoupling& b) {
  uint32_t k = std::lcm(a.k, b.k);
  require(k <= (1u << 12), "common coupling refinement too large");
  DiscreteCoupling ar = refine_coupling(a, k / a.k);
  DiscreteCoupling br = refine_coupling(b, k / b.k);
  double worst = 0.0;
  for (const auto& [p, q] : kFrequencies)
    for (bool sx : {false, true})
      for (bool sy : {false, true}) {
        double d = coupling_integral(ar, p, q, sx, sy) -
                   coupling_integral(br, p, q, sx, sy);
        worst = std::max(worst, std::fabs(d));
      }
  return worst;
}

}  // namespace gldp
