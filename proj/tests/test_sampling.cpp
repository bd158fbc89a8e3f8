#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "gldp/grid.hpp"
#include "gldp/norms.hpp"
#include "gldp/rng.hpp"
#include "gldp/sampling.hpp"

using namespace gldp;

TEST_CASE("degenerate kernels give sure graphs") {
  StepGraphon ones = StepGraphon::constant(4, 1.0);
  StepGraphon zeros = StepGraphon::constant(4, 0.0);
  for (uint64_t seed : {0ull, 7ull, 123456789ull}) {
    CHECK(sample_w_random(ones, seed, true).edge_count() == 16);
    CHECK(sample_w_random(zeros, seed, true).edge_count() == 0);
    CHECK(sample_w_random(ones, seed, false).edge_count() == 16);
  }
}

TEST_CASE("undirected samples are symmetric with mirrored lower triangle") {
  StepGraphon w = StepGraphon::constant(16, 0.5);
  AdjacencyGraph g = sample_w_random(w, 99, false);
  for (uint32_t i = 0; i < 16; ++i)
    for (uint32_t j = 0; j < 16; ++j) CHECK(g.at(i, j) == g.at(j, i));
}

TEST_CASE("same seed reproduces, different seeds differ") {
  StepGraphon w = StepGraphon::constant(12, 0.5);
  AdjacencyGraph a = sample_w_random(w, 5, true);
  AdjacencyGraph b = sample_w_random(w, 5, true);
  AdjacencyGraph c = sample_w_random(w, 6, true);
  CHECK(a.bits == b.bits);
  CHECK(a.bits != c.bits);
}

TEST_CASE("mean edge count matches the binomial mean") {
  StepGraphon w = StepGraphon::constant(64, 0.5);
  const int trials = 10000;
  double total = 0.0;
  for (int s = 0; s < trials; ++s)
    total += double(sample_w_random(w, uint64_t(s), true).edge_count());
  double mean = total / trials;
  // sd of one count is sqrt(4096 * 1/4) = 32
  double se = 32.0 / std::sqrt(double(trials));
  CHECK(std::fabs(mean - 2048.0) <= 3.0 * se);
}

TEST_CASE("n=2 outcome distribution is uniform") {
  StepGraphon w = StepGraphon::constant(2, 0.5);
  const int trials = 100000;
  std::vector<int> counts(16, 0);
  for (int s = 0; s < trials; ++s) {
    AdjacencyGraph g = sample_w_random(w, uint64_t(s) + 777, true);
    int code = g.bits[0] | g.bits[1] << 1 | g.bits[2] << 2 | g.bits[3] << 3;
    ++counts[code];
  }
  double expected = trials / 16.0;
  double chi2 = 0.0;
  for (int c : counts) {
    double d = c - expected;
    chi2 += d * d / expected;
  }
  // 15 degrees of freedom, 0.001 quantile is 37.7
  CHECK(chi2 < 37.7);
}

TEST_CASE("sparse sampling") {
  StepGraphon ones = StepGraphon::constant(100, 1.0);
  SUBCASE("alpha = 1 reduces to the dense sampler") {
    StepGraphon w = StepGraphon::constant(10, 0.3);
    CHECK(sample_sparse(w, 1.0, 42).bits ==
          sample_w_random(w, 42, true).bits);
  }
  SUBCASE("mean degree follows n * alpha") {
    double alpha = std::pow(100.0, -0.4);
    const int trials = 1000;
    double total = 0.0;
    for (int s = 0; s < trials; ++s)
      total += double(sample_sparse(ones, alpha, uint64_t(s)).edge_count());
    double mean_degree = total / trials / 100.0;
    double target = 100.0 * alpha;
    double sd_count = std::sqrt(10000.0 * alpha * (1 - alpha));
    double se_degree = sd_count / 100.0 / std::sqrt(double(trials));
    CHECK(std::fabs(mean_degree - target) <= 3.0 * se_degree);
  }
  SUBCASE("alpha * W above 1 is rejected") {
    StepGraphon big(2, {2.0, 2.0, 2.0, 2.0}, 4.0);
    CHECK_THROWS_AS(sample_sparse(big, 0.9, 1), domain_error);
    CHECK_NOTHROW(sample_sparse(big, 0.5, 1));
  }
}

TEST_CASE("embed maps bits to cell values") {
  StepGraphon w = StepGraphon::constant(6, 0.5);
  AdjacencyGraph g = sample_w_random(w, 3, true);
  StepGraphon e = embed(g);
  CHECK(e.bound == 1.0);
  for (std::size_t c = 0; c < e.values.size(); ++c)
    CHECK(e.values[c] == double(g.bits[c]));

  AdjacencyGraph s = sample_sparse(StepGraphon::constant(6, 1.0), 0.25, 3);
  StepGraphon r = embed(s, true);
  CHECK(r.bound == 4.0);
  for (std::size_t c = 0; c < r.values.size(); ++c)
    CHECK(r.values[c] == 4.0 * double(s.bits[c]));
}

TEST_CASE("tilted samples carry the likelihood ratio") {
  SUBCASE("V = W gives zero log weight") {
    StepGraphon w = StepGraphon::constant(3, 0.37);
    for (uint64_t s = 0; s < 20; ++s)
      CHECK(sample_tilted(w, w, s).log_weight == 0.0);
  }
  SUBCASE("deterministic tilt to the complete graph") {
    StepGraphon v = StepGraphon::constant(2, 1.0);
    StepGraphon w = StepGraphon::constant(2, 0.5);
    TiltedSample ts = sample_tilted(v, w, 11);
    CHECK(ts.graph.edge_count() == 4);
    CHECK(ts.log_weight == doctest::Approx(-4.0 * std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("weights integrate to one, exhaustively at n = 2") {
    StepGraphon v(2, {0.9, 0.4, 0.6, 0.2});
    StepGraphon w(2, {0.5, 0.5, 0.25, 0.75});
    double total = 0.0;
    AdjacencyGraph g(2, true, 1.0, 0, "enum");
    for (uint32_t mask = 0; mask < 16; ++mask) {
      double pv = 1.0;
      for (uint32_t c = 0; c < 4; ++c) {
        bool bit = (mask >> c) & 1;
        g.bits[c] = bit ? 1 : 0;
        pv *= bit ? v.values[c] : 1.0 - v.values[c];
      }
      total += pv * std::exp(tilted_log_weight(g, v, w));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("support violations produce infinities") {
    StepGraphon v(1, {0.5});
    StepGraphon wz(1, {0.0});
    AdjacencyGraph g(1, true, 1.0, 0, "enum");
    g.bits[0] = 1;
    CHECK(tilted_log_weight(g, v, wz) == -kInf);
    StepGraphon vz(1, {0.0});
    StepGraphon w(1, {0.5});
    CHECK(tilted_log_weight(g, vz, w) == kInf);
    g.bits[0] = 0;
    StepGraphon v1(1, {1.0});
    StepGraphon w1(1, {1.0});
    CHECK(tilted_log_weight(g, v1, w1) == 0.0);
  }
}

TEST_CASE("empirical graphon converges to the kernel in the heuristic norm") {
  AnalyticKernel prod = make_analytic_kernel("product");
  HeuristicConfig cfg{4, 33};
  std::vector<double> medians;
  for (uint32_t n : {32u, 64u, 128u}) {
    StepGraphon wn = project(prod, n);
    std::vector<double> dist;
    for (uint64_t s = 0; s < 11; ++s) {
      AdjacencyGraph g = sample_w_random(wn, replica_seed(17, s), true);
      dist.push_back(
          d_inf_one(embed(g), wn, NormMode::heuristic, cfg).value);
    }
    std::sort(dist.begin(), dist.end());
    medians.push_back(dist[dist.size() / 2]);
  }
  CHECK(medians[1] <= medians[0]);
  CHECK(medians[2] <= medians[1]);
}

TEST_CASE("deterministic initial condition averages cells") {
  auto ic = make_initial_condition(
      deterministic_ic([](double) { return 0.75; }), 8);
  for (double v : ic.coarse.values) CHECK(v == doctest::Approx(0.75));
  for (double v : ic.fine.values) CHECK(v == doctest::Approx(0.75));
  auto lin = make_initial_condition(
      deterministic_ic([](double x) { return x; }), 4);
  for (uint32_t i = 0; i < 4; ++i)
    CHECK(lin.coarse.values[i] == doctest::Approx((i + 0.5) / 4).epsilon(1e-13));
}

TEST_CASE("lipschitz initial condition obeys the fine-coarse gap bound") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    double m = 0.5 + 0.25 * double(seed % 7);
    uint32_t n = 4 + uint32_t(seed % 5) * 8;
    auto ic = make_initial_condition(lipschitz_ic(m, seed), n);
    CHECK(ic.fine.n == 16 * n);
    CHECK(grid_l2_distance(ic.fine, ic.coarse) <= m / n + 1e-12);
    for (double v : ic.fine.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("convolved initial condition") {
  FiniteLaw mu = FiniteLaw::uniform({0.0, 1.0});
  SUBCASE("fine-coarse gap shrinks along a resolution ladder") {
    int ok = 0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
      std::vector<double> gaps;
      for (uint32_t n : {16u, 32u, 64u, 128u}) {
        auto ic = make_initial_condition(convolved_ic(mu, 0.05, seed), n);
        gaps.push_back(grid_l2_distance(ic.fine, ic.coarse));
      }
      bool mono = gaps[1] <= gaps[0] && gaps[2] <= gaps[1] && gaps[3] <= gaps[2];
      ok += mono ? 1 : 0;
    }
    CHECK(ok >= 18);  // Monte Carlo consistency, not a sure event per seed
  }
  SUBCASE("point mass is exactly constant") {
    auto ic = make_initial_condition(convolved_ic(FiniteLaw::point(0.3), 0.1, 5), 8);
    for (double v : ic.coarse.values) CHECK(v == doctest::Approx(0.3).epsilon(1e-12));
  }
}

TEST_CASE("parameter generator") {
  FiniteLaw pm = FiniteLaw::uniform({-1.0, 1.0});
  SUBCASE("point mass gives constant parameters") {
    GridFunction xi = make_parameters(FiniteLaw::point(2.5), 16, 9);
    for (double v : xi.values) CHECK(v == doctest::Approx(2.5).epsilon(1e-12));
  }
  SUBCASE("empirical mean concentrates near zero") {
    const int trials = 200;
    uint32_t n = 32;
    double total = 0.0;
    for (int s = 0; s < trials; ++s) {
      GridFunction xi = make_parameters(pm, n, uint64_t(s));
      for (double v : xi.values) total += v;
    }
    double mean = total / (trials * n);
    // each cell is an average of n iid signs smoothed by a fixed kernel
    double se = 1.0 / std::sqrt(double(trials) * n * n);
    CHECK(std::fabs(mean) <= 5.0 * se);
  }
  SUBCASE("same seed same output") {
    CHECK(make_parameters(pm, 8, 4).values == make_parameters(pm, 8, 4).values);
  }
}

TEST_CASE("law validation") {
  CHECK_THROWS_AS(FiniteLaw({}, {}), domain_error);
  CHECK_THROWS_AS(FiniteLaw({0.0}, {0.5}), domain_error);
  CHECK_THROWS_AS(FiniteLaw({0.0, 1.0}, {0.7, 0.7}), domain_error);
  CHECK_THROWS_AS(FiniteLaw({kInf}, {1.0}), domain_error);
  FiniteLaw b({0.0, 1.0}, {0.25, 0.75});
  CHECK(b.mean() == doctest::Approx(0.75));
  CHECK(b.max_abs() == 1.0);
}
