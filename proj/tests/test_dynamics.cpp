#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gldp/dynamics.hpp"
#include "gldp/rng.hpp"
#include "gldp/sampling.hpp"

using namespace gldp;

namespace {

StepGraphon random_graphon(uint32_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(std::size_t(n) * n);
  for (auto& x : v) x = rng.next_unit();
  return StepGraphon(n, std::move(v));
}

GridFunction random_grid(uint32_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.next_unit();
  return GridFunction(n, std::move(v));
}

double endpoint_error(double dt) {
  StepGraphon full = StepGraphon::constant(2, 1.0);
  GridFunction g(2, {1.0, 0.0});
  CouplingSpec c = make_coupling("zero", "linear");
  Trajectory traj = simulate(full, g, nullptr, c, 1.0, dt, 1u << 30);
  double u1 = 0.5 + 0.5 * std::exp(-1.0);
  double u2 = 0.5 - 0.5 * std::exp(-1.0);
  return std::max(std::fabs(traj.states.back().values[0] - u1),
                  std::fabs(traj.states.back().values[1] - u2));
}

}  // namespace

TEST_CASE("registry constants") {
  CouplingSpec k = make_coupling("zero", "kuramoto");
  CHECK(k.lip_d == doctest::Approx(2.0 * 3.14159265358979324).epsilon(1e-15));
  CHECK(k.bound_d == 1.0);
  CHECK(!k.bound_exempt);
  CouplingSpec l = make_coupling("constant_drift:0.5", "linear");
  CHECK(l.drift == 0.5);
  CHECK(l.bound_f == 0.5);
  CHECK(l.bound_exempt);
  CouplingSpec t = make_coupling("frequency", "tanh_diff");
  CHECK(t.lip_d == 1.0);
  CHECK_THROWS_AS(make_coupling("wobble", "linear"), format_error);
  CHECK_THROWS_AS(make_coupling("zero", "quadratic"), format_error);
  CHECK_THROWS_AS(make_coupling("constant_drift:abc", "linear"), format_error);
}

TEST_CASE("zero right-hand side keeps the state constant") {
  StepGraphon zero = StepGraphon::constant(4, 0.0);
  GridFunction g = random_grid(4, 3);
  CouplingSpec c = make_coupling("zero", "kuramoto");
  Trajectory traj = simulate(zero, g, nullptr, c, 1.0, 0.005, 50);
  for (const auto& s : traj.states) CHECK(s.values == g.values);
}

TEST_CASE("synchronized phases stay synchronized") {
  StepGraphon w = random_graphon(6, 5);
  GridFunction g(6, std::vector<double>(6, 0.25));
  CouplingSpec c = make_coupling("zero", "kuramoto");
  Trajectory traj = simulate(w, g, nullptr, c, 0.5, 0.005, 20);
  for (const auto& s : traj.states)
    for (double v : s.values) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("closed-form mean-field solution at n = 2") {
  CHECK(endpoint_error(1e-3) <= 1e-9);
}

TEST_CASE("dt halving reduces the endpoint error at fourth order") {
  double e1 = endpoint_error(0.05);
  double e2 = endpoint_error(0.025);
  CHECK(e1 / e2 >= 7.2);
}

TEST_CASE("integration of pure drift is exact") {
  StepGraphon zero = StepGraphon::constant(3, 0.0);
  GridFunction g(3, {0.0, 0.5, 1.0});
  CouplingSpec c = make_coupling("constant_drift:0.25", "linear");
  Trajectory traj = simulate(zero, g, nullptr, c, 2.0, 0.01, 100);
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    for (uint32_t i = 0; i < 3; ++i)
      CHECK(traj.states[k].values[i] ==
            doctest::Approx(g.values[i] + 0.25 * traj.times[k]).epsilon(1e-12));
}

TEST_CASE("frequency dynamics read the parameter vector") {
  StepGraphon zero = StepGraphon::constant(3, 0.0);
  GridFunction g(3, {0.0, 0.0, 0.0});
  GridFunction xi(3, {1.0, -2.0, 0.5});
  CouplingSpec c = make_coupling("frequency", "kuramoto");
  Trajectory traj = simulate(zero, g, &xi, c, 1.0, 0.005, 100);
  for (uint32_t i = 0; i < 3; ++i)
    CHECK(traj.states.back().values[i] ==
          doctest::Approx(xi.values[i]).epsilon(1e-12));
  CHECK_THROWS_AS(simulate(zero, g, nullptr, c, 1.0, 0.005, 100),
                  domain_error);
}

TEST_CASE("stability guard and step-count validation") {
  StepGraphon w = StepGraphon::constant(4, 1.0);
  GridFunction g = random_grid(4, 1);
  CouplingSpec c = make_coupling("zero", "kuramoto");
  // 0.1 / (2 * 2pi) is about 0.008
  CHECK_THROWS_AS(simulate(w, g, nullptr, c, 1.0, 0.01, 10), domain_error);
  CHECK_THROWS_AS(simulate(w, g, nullptr, c, 1.0, 0.0033, 10), domain_error);
  CHECK_NOTHROW(simulate(w, g, nullptr, c, 1.0, 0.005, 10));
}

TEST_CASE("snapshots follow save_every plus the final time") {
  StepGraphon w = StepGraphon::constant(2, 0.5);
  GridFunction g(2, {0.2, 0.8});
  CouplingSpec c = make_coupling("zero", "tanh_diff");
  Trajectory traj = simulate(w, g, nullptr, c, 1.0, 0.01, 30);
  REQUIRE(traj.times.size() == 5);
  CHECK(traj.times[0] == 0.0);
  CHECK(traj.times[1] == doctest::Approx(0.30).epsilon(1e-12));
  CHECK(traj.times[3] == doctest::Approx(0.90).epsilon(1e-12));
  CHECK(traj.times[4] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(traj.states[0].values == g.values);
}

TEST_CASE("continuum solver agrees with simulate on projected data") {
  AnalyticKernel prod = make_analytic_kernel("product");
  CouplingSpec c = make_coupling("zero", "kuramoto");
  Trajectory a = solve_continuum(prod, [](double x) { return x; }, c, 16, 1.0,
                                 0.005, 40);
  Trajectory b = simulate(project(prod, 16),
                          grid_from_function([](double x) { return x; }, 16),
                          nullptr, c, 1.0, 0.005, 40);
  CHECK(trajectory_distance(a, b) == 0.0);
}

TEST_CASE("decoupled continuum dynamics are constant") {
  StepGraphon zero = StepGraphon::constant(8, 0.0);
  CouplingSpec c = make_coupling("zero", "kuramoto");
  Trajectory t = solve_continuum(zero, [](double x) { return x; }, c, 8, 0.5,
                                 0.005, 10);
  for (const auto& s : t.states)
    for (uint32_t i = 0; i < 8; ++i)
      CHECK(s.values[i] == doctest::Approx((i + 0.5) / 8).epsilon(1e-13));
}

TEST_CASE("galerkin self-convergence on a smooth kernel") {
  AnalyticKernel prod = make_analytic_kernel("product");
  CouplingSpec c = make_coupling("zero", "kuramoto");
  auto g = [](double x) { return x; };
  Trajectory ref = solve_continuum(prod, g, c, 256, 1.0, 0.005, 40);
  std::vector<double> err;
  for (uint32_t m : {8u, 16u, 32u}) {
    Trajectory t = solve_continuum(prod, g, c, m, 1.0, 0.005, 40);
    // compare on the common refinement
    double worst = 0.0;
    for (std::size_t k = 0; k < t.times.size(); ++k)
      worst = std::max(worst, grid_l2_distance(t.states[k], ref.states[k]));
    err.push_back(worst);
  }
  CHECK(err[1] < err[0]);
  CHECK(err[2] < err[1]);
}

TEST_CASE("trajectory distance is a metric on snapshots") {
  StepGraphon w = random_graphon(5, 11);
  GridFunction g1 = random_grid(5, 12), g2 = random_grid(5, 13);
  CouplingSpec c = make_coupling("zero", "tanh_diff");
  Trajectory a = simulate(w, g1, nullptr, c, 1.0, 0.01, 25);
  Trajectory b = simulate(w, g2, nullptr, c, 1.0, 0.01, 25);
  CHECK(trajectory_distance(a, a) == 0.0);
  CHECK(trajectory_distance(a, b) == trajectory_distance(b, a));
  CHECK(trajectory_distance(a, b) > 0.0);
  Trajectory short_run = simulate(w, g1, nullptr, c, 0.5, 0.01, 25);
  CHECK_THROWS_AS(trajectory_distance(a, short_run), domain_error);
}

TEST_CASE("constant-in-time states give the plain distance") {
  StepGraphon zero = StepGraphon::constant(3, 0.0);
  CouplingSpec c = make_coupling("zero", "kuramoto");
  GridFunction a(3, {0.0, 0.0, 0.0}), b(3, {0.3, 0.3, 0.3});
  Trajectory u = simulate(zero, a, nullptr, c, 1.0, 0.005, 50);
  Trajectory v = simulate(zero, b, nullptr, c, 1.0, 0.005, 50);
  CHECK(trajectory_distance(u, v) == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("quotient distance recovers a relabeling") {
  CouplingSpec c = make_coupling("zero", "kuramoto");
  SUBCASE("exact enumeration at n = 6") {
    StepGraphon w = random_graphon(6, 21);
    GridFunction g = random_grid(6, 22);
    Trajectory u = simulate(w, g, nullptr, c, 0.5, 0.005, 20);
    std::vector<uint32_t> m = {4, 2, 0, 5, 1, 3};
    Permutation sigma(m);
    Trajectory v = u;
    for (auto& s : v.states) {
      auto old = s.values;
      for (uint32_t i = 0; i < 6; ++i) s.values[i] = old[sigma.map[i]];
    }
    // v = u relabeled, so relabeling u by sigma reproduces v
    auto qr = quotient_trajectory_distance(u, v, 4, 7);
    CHECK(qr.distance <= 1e-15);
    CHECK(quotient_trajectory_distance(u, u, 4, 7).distance == 0.0);
  }
  SUBCASE("heuristic search at n = 12") {
    StepGraphon w = random_graphon(12, 31);
    GridFunction g = random_grid(12, 32);
    Trajectory u = simulate(w, g, nullptr, c, 0.5, 0.005, 20);
    Rng rng(40);
    std::vector<uint32_t> m(12);
    for (uint32_t i = 0; i < 12; ++i) m[i] = i;
    for (uint32_t i = 12; i > 1; --i) std::swap(m[i - 1], m[rng.next_below(i)]);
    Trajectory v = u;
    for (auto& s : v.states) {
      auto old = s.values;
      for (uint32_t i = 0; i < 12; ++i) s.values[i] = old[m[i]];
    }
    auto qr = quotient_trajectory_distance(u, v, 6, 99);
    CHECK(qr.distance <= 1e-12);
    CHECK(qr.distance >= 0.0);
  }
  SUBCASE("constant states are permutation-invariant") {
    StepGraphon zero = StepGraphon::constant(4, 0.0);
    GridFunction a(4, std::vector<double>(4, 0.6));
    GridFunction b(4, std::vector<double>(4, 0.1));
    Trajectory u = simulate(zero, a, nullptr, c, 0.5, 0.005, 20);
    Trajectory v = simulate(zero, b, nullptr, c, 0.5, 0.005, 20);
    auto qr = quotient_trajectory_distance(u, v, 2, 1);
    CHECK(qr.distance == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(qr.distance == doctest::Approx(trajectory_distance(u, v)).epsilon(1e-13));
  }
}

TEST_CASE("a priori bound check") {
  CouplingSpec kur = make_coupling("zero", "kuramoto");
  StepGraphon w = random_graphon(8, 41);
  GridFunction g = random_grid(8, 42);
  Trajectory traj = simulate(w, g, nullptr, kur, 1.0, 0.005, 20);
  CHECK(a_priori_bound_check(traj, kur, g, nullptr, w));
  CouplingSpec lin = make_coupling("zero", "linear");
  CHECK_THROWS_AS(a_priori_bound_check(traj, lin, g, nullptr, w),
                  domain_error);
  // zero dynamics: slack is exactly the sup of g
  StepGraphon zero = StepGraphon::constant(8, 0.0);
  Trajectory still = simulate(zero, g, nullptr, kur, 1.0, 0.005, 20);
  CHECK(a_priori_bound_check(still, kur, g, nullptr, zero));
}

TEST_CASE("permutation equivariance is bitwise") {
  CouplingSpec c = make_coupling("zero", "kuramoto");
  for (uint64_t rep = 0; rep < 5; ++rep) {
    uint32_t n = 16;
    StepGraphon w = random_graphon(n, 100 + rep);
    GridFunction g = random_grid(n, 200 + rep);
    Rng rng(300 + rep);
    std::vector<uint32_t> m(n);
    for (uint32_t i = 0; i < n; ++i) m[i] = i;
    for (uint32_t i = n; i > 1; --i) std::swap(m[i - 1], m[rng.next_below(i)]);
    Permutation sigma(m);

    Trajectory base = simulate(w, g, nullptr, c, 0.5, 0.005, 25);
    GridFunction gp(n, [&] {
      std::vector<double> v(n);
      for (uint32_t i = 0; i < n; ++i) v[i] = g.values[sigma.map[i]];
      return v;
    }());
    Trajectory perm = simulate(permute(w, sigma), gp, nullptr, c, 0.5, 0.005, 25);
    for (std::size_t k = 0; k < base.times.size(); ++k)
      for (uint32_t i = 0; i < n; ++i)
        CHECK(perm.states[k].values[i] == base.states[k].values[sigma.map[i]]);
  }
}

TEST_CASE("worker count does not change the trajectory") {
  CouplingSpec c = make_coupling("zero", "kuramoto");
  StepGraphon w = random_graphon(96, 61);
  GridFunction g = random_grid(96, 62);
  Trajectory t1 = simulate(w, g, nullptr, c, 0.25, 0.005, 10, 1);
  Trajectory t4 = simulate(w, g, nullptr, c, 0.25, 0.005, 10, 4);
  Trajectory t7 = simulate(w, g, nullptr, c, 0.25, 0.005, 10, 7);
  for (std::size_t k = 0; k < t1.times.size(); ++k) {
    CHECK(t1.states[k].values == t4.states[k].values);
    CHECK(t1.states[k].values == t7.states[k].values);
  }
}
