#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gldp/rates.hpp"
#include "gldp/rng.hpp"
#include "oracles.hpp"

using namespace gldp;

namespace {

StepGraphon random_graphon(uint32_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(std::size_t(n) * n);
  for (auto& x : v) x = rng.next_unit();
  return StepGraphon(n, std::move(v));
}

Permutation random_permutation(uint32_t n, Rng& rng) {
  std::vector<uint32_t> m(n);
  for (uint32_t i = 0; i < n; ++i) m[i] = i;
  for (uint32_t i = n; i > 1; --i) std::swap(m[i - 1], m[rng.next_below(i)]);
  return Permutation(m);
}

}  // namespace

TEST_CASE("upsilon closed forms") {
  StepGraphon w = random_graphon(7, 1);
  CHECK(upsilon(w, w).value == 0.0);
  StepGraphon ones = StepGraphon::constant(3, 1.0);
  StepGraphon half = StepGraphon::constant(3, 0.5);
  CHECK(upsilon(ones, half).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  StepGraphon zero = StepGraphon::constant(3, 0.0);
  CHECK(upsilon(half, zero).value == kInf);
  CHECK(upsilon(zero, half).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // mixed resolutions refine to the common grid
  StepGraphon a = StepGraphon::constant(2, 0.8);
  StepGraphon b = StepGraphon::constant(3, 0.5);
  double cell = 0.8 * std::log(1.6) + 0.2 * std::log(0.4);
  CHECK(upsilon(a, b).value == doctest::Approx(cell).epsilon(1e-12));
}

TEST_CASE("upsilon matches the direct oracle") {
  Rng rng(5);
  for (int rep = 0; rep < 60; ++rep) {
    uint32_t n = 1 + uint32_t(rng.next_below(9));
    StepGraphon v = random_graphon(n, rng.next_u64());
    StepGraphon w = random_graphon(n, rng.next_u64());
    CHECK(upsilon(v, w).value ==
          doctest::Approx(oracle::upsilon_brute(v.values, w.values))
              .epsilon(1e-12));
  }
}

TEST_CASE("upsilon nonnegativity and identifiability") {
  Rng rng(6);
  for (int rep = 0; rep < 500; ++rep) {
    uint32_t n = 1 + uint32_t(rng.next_below(16));
    StepGraphon v = random_graphon(n, rng.next_u64());
    StepGraphon w = random_graphon(n, rng.next_u64());
    double val = upsilon(v, w).value;
    CHECK(val >= 0.0);
    if (v.values != w.values) CHECK(val > 0.0);
  }
}

TEST_CASE("upsilon permutation invariance is bitwise") {
  Rng rng(7);
  for (int rep = 0; rep < 40; ++rep) {
    uint32_t n = 2 + uint32_t(rng.next_below(12));
    StepGraphon v = random_graphon(n, rng.next_u64());
    StepGraphon w = random_graphon(n, rng.next_u64());
    Permutation sigma = random_permutation(n, rng);
    CHECK(upsilon(permute(v, sigma), permute(w, sigma)).value ==
          upsilon(v, w).value);
  }
}

TEST_CASE("quotient rate identifies relabeled kernels") {
  Rng rng(8);
  StepGraphon w = random_graphon(5, 81);
  Permutation sigma = random_permutation(5, rng);
  RateReport r = rate_quotient(permute(w, sigma), w, NormMode::exact);
  CHECK(r.value == 0.0);
  REQUIRE(r.sigma.has_value());
  CHECK(upsilon(permute(permute(w, sigma), *r.sigma), w).value == 0.0);
}

TEST_CASE("quotient rate on constants equals upsilon") {
  StepGraphon v = StepGraphon::constant(4, 0.7);
  StepGraphon w = StepGraphon::constant(4, 0.3);
  RateReport r = rate_quotient(v, w, NormMode::exact);
  CHECK(r.value == doctest::Approx(upsilon(v, w).value).epsilon(1e-15));
}

TEST_CASE("exact quotient matches factorial enumeration at n = 3") {
  Rng rng(9);
  for (int rep = 0; rep < 20; ++rep) {
    StepGraphon v = random_graphon(3, rng.next_u64());
    StepGraphon w = random_graphon(3, rng.next_u64());
    RateReport r = rate_quotient(v, w, NormMode::exact);
    // independent enumeration over all 6 relabelings
    std::vector<uint32_t> m = {0, 1, 2};
    double best = kInf;
    do {
      std::vector<double> pv(9);
      for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 0; j < 3; ++j)
          pv[i * 3 + j] = v.at(m[i], m[j]);
      best = std::min(best, oracle::upsilon_brute(pv, w.values));
    } while (std::next_permutation(m.begin(), m.end()));
    CHECK(r.value == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("heuristic quotient upper-bounds the exact value") {
  Rng rng(10);
  HeuristicConfig cfg{4, 77};
  for (int rep = 0; rep < 10; ++rep) {
    uint32_t n = 4 + uint32_t(rng.next_below(4));
    StepGraphon v = random_graphon(n, rng.next_u64());
    StepGraphon w = random_graphon(n, rng.next_u64());
    RateReport ex = rate_quotient(v, w, NormMode::exact);
    RateReport he = rate_quotient(v, w, NormMode::heuristic, cfg);
    CHECK(he.mode == RateMode::heuristic_upper);
    CHECK(he.value >= ex.value - 1e-12);
    REQUIRE(he.sigma.has_value());
    CHECK(upsilon(permute(v, *he.sigma), w).value ==
          doctest::Approx(he.value).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rate_quotient(random_graphon(9, 1), random_graphon(9, 2),
                                NormMode::exact),
                  domain_error);
}

TEST_CASE("sparse rate closed forms") {
  StepGraphon w = random_graphon(6, 11);
  CHECK(sparse_rate(w, w).value == 0.0);
  StepGraphon two(2, {2, 2, 2, 2}, 2.0);
  StepGraphon one = StepGraphon::constant(2, 1.0);
  CHECK(sparse_rate(two, one).value ==
        doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-12));
  StepGraphon zero = StepGraphon::constant(2, 0.0);
  CHECK(sparse_rate(zero, one).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sparse_rate(one, zero).value == kInf);
  CHECK(sparse_rate(zero, zero).value == 0.0);
}

TEST_CASE("poisson ell properties") {
  CHECK(poisson_ell(0.0) == 1.0);
  CHECK(poisson_ell(1.0) == 0.0);
  CHECK_THROWS_AS(poisson_ell(-0.1), domain_error);
  for (double z = 0.0; z <= 4.0; z += 0.125) CHECK(poisson_ell(z) >= 0.0);
  // midpoint convexity on a grid
  for (double a = 0.0; a <= 3.0; a += 0.25)
    for (double b = a + 0.25; b <= 3.0; b += 0.25)
      CHECK(poisson_ell(0.5 * (a + b)) <=
            0.5 * (poisson_ell(a) + poisson_ell(b)) + 1e-14);
}

TEST_CASE("bernstein bound closed forms and shape") {
  CHECK(bernstein_h(0.0) == 0.0);
  CHECK(bernstein_h(1.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));
  CHECK(bernstein_bound(100, 1.0, 1.0) ==
        doctest::Approx(std::exp(-100.0 * (2.0 * std::log(2.0) - 1.0)))
            .epsilon(1e-12));
  CHECK(bernstein_bound(10, 1.0, 1e-12) == doctest::Approx(1.0));
  for (double u = 0.01; u <= 2.0; u += 0.01) CHECK(bernstein_h(u) > 0.0);
  for (double a = 0.0; a <= 2.0; a += 0.125)
    for (double b = a + 0.125; b <= 2.0; b += 0.125)
      CHECK(bernstein_h(0.5 * (a + b)) <=
            0.5 * (bernstein_h(a) + bernstein_h(b)) + 1e-14);
  // quadratic behavior near zero
  for (double u : {0.001, 0.01, 0.05, 0.1})
    CHECK(std::fabs(bernstein_h(u) / (0.5 * u * u) - 1.0) <= 0.1);
}

TEST_CASE("empirical tails respect the bound") {
  // iid Bernoulli(1/2) centered at 1/2, c = 1
  const int replicas = 20000, N = 200;
  for (double delta : {0.1, 0.2}) {
    int hits = 0;
    for (int r = 0; r < replicas; ++r) {
      Rng rng(replica_seed(123, uint64_t(r)));
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += (rng.next_unit() < 0.5 ? 1.0 : 0.0) - 0.5;
      if (s / N >= delta) ++hits;
    }
    CHECK(double(hits) / replicas <= bernstein_bound(N, 1.0, delta));
  }
}

TEST_CASE("legendre rate closed forms") {
  FiniteLaw bern = FiniteLaw::uniform({0.0, 1.0});
  CHECK(legendre_rate(bern, 0.5) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(legendre_rate(bern, 1.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK(legendre_rate(bern, 0.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK(legendre_rate(bern, 1.5) == kInf);
  CHECK(legendre_rate(bern, -0.5) == kInf);
  // closed form at an interior point: b log(b/p) style entropy
  double b = 0.75;
  double closed = b * std::log(2.0 * b) + (1 - b) * std::log(2.0 * (1 - b));
  CHECK(legendre_rate(bern, b) == doctest::Approx(closed).epsilon(1e-8));
  FiniteLaw point = FiniteLaw::point(0.3);
  CHECK(legendre_rate(point, 0.3) == 0.0);
  CHECK(legendre_rate(point, 0.4) == kInf);
  FiniteLaw skew({-1.0, 2.0}, {0.25, 0.75});
  CHECK(legendre_rate(skew, skew.mean()) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(legendre_rate(skew, 2.0) == doctest::Approx(-std::log(0.75)).epsilon(1e-8));
}

TEST_CASE("clamp helper") {
  StepGraphon w(2, {0.0, 1.0, 0.5, 0.3});
  StepGraphon c = clamp_graphon(w, 0.1);
  CHECK(c.values == std::vector<double>{0.1, 0.9, 0.5, 0.3});
  CHECK_THROWS_AS(clamp_graphon(w, 0.6), domain_error);
}

TEST_CASE("initial condition rates") {
  GridFunction g(4, {0.1, 0.2, 0.3, 0.4});
  CHECK(deterministic_rate(g, g) == 0.0);
  GridFunction h(4, {0.1, 0.2, 0.3, 0.5});
  CHECK(deterministic_rate(g, h) == kInf);

  FiniteLaw bern = FiniteLaw::uniform({0.0, 1.0});
  GridFunction mean_ell(4, std::vector<double>(4, 0.5));
  CHECK(initial_condition_rate(bern, mean_ell) ==
        doctest::Approx(0.0).epsilon(1e-8));
  GridFunction ones_ell(4, std::vector<double>(4, 1.0));
  CHECK(initial_condition_rate(bern, ones_ell) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-8));
  GridFunction bad_ell(4, {0.5, 0.5, 0.5, 2.0});
  CHECK(initial_condition_rate(bern, bad_ell) == kInf);
}
