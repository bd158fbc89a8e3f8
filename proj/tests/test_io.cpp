#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gldp/common.hpp"
#include "gldp/dynamics.hpp"
#include "gldp/io.hpp"
#include "gldp/rng.hpp"
#include "gldp/sampling.hpp"
#include "gldp/staircase.hpp"

using namespace gldp;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
  fs::path d = fs::temp_directory_path() / "gldp_io_test";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(bool(f));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary);
  f << s;
}

}  // namespace

TEST_CASE("double formatting is shortest and exact") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-2.5) == "-2.5");
  CHECK(io::parse_double("0.1") == 0.1);
  CHECK(io::parse_double("1e-3") == 1e-3);
  CHECK_THROWS_AS(io::parse_double("1.2x"), format_error);
  CHECK_THROWS_AS(io::parse_double(""), format_error);

  Rng rng(2024);
  for (int i = 0; i < 2000; ++i) {
    double v = (rng.next_unit() - 0.5) *
               std::pow(10.0, rng.next_uniform(-30.0, 30.0));
    CHECK(io::parse_double(io::format_double(v)) == v);
  }
  CHECK(io::parse_double(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("graphon files round-trip byte for byte") {
  fs::path p1 = tmp_dir() / "w1.csv", p2 = tmp_dir() / "w2.csv";
  Rng rng(7);
  std::vector<double> vals(9);
  for (double& v : vals) v = rng.next_unit();
  StepGraphon w(3, vals);
  io::write_graphon(p1, w);
  StepGraphon r = io::read_graphon(p1);
  CHECK(r.n == 3);
  CHECK(r.values == w.values);
  CHECK(r.bound == w.bound);
  io::write_graphon(p2, r);
  CHECK(slurp(p1) == slurp(p2));

  StepGraphon wide(2, {0.5, 1.25, 1.25, 2.0}, 2.5);
  io::write_graphon(p1, wide);
  CHECK(io::read_graphon(p1).bound == 2.5);
}

TEST_CASE("grid function files round-trip byte for byte") {
  fs::path p1 = tmp_dir() / "g1.csv", p2 = tmp_dir() / "g2.csv";
  Rng rng(8);
  std::vector<double> vals(6);
  for (double& v : vals) v = rng.next_uniform(-3.0, 3.0);
  GridFunction g(6, vals);
  io::write_gridfn(p1, g);
  GridFunction r = io::read_gridfn(p1);
  CHECK(r.n == 6);
  CHECK(r.values == g.values);
  io::write_gridfn(p2, r);
  CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("adjacency files round-trip byte for byte") {
  fs::path p1 = tmp_dir() / "a1.csv", p2 = tmp_dir() / "a2.csv";
  StepGraphon w = StepGraphon::constant(5, 0.4);
  for (bool directed : {true, false}) {
    AdjacencyGraph g = sample_w_random(w, 99, directed);
    io::write_adjacency(p1, g);
    AdjacencyGraph r = io::read_adjacency(p1);
    CHECK(r.n == g.n);
    CHECK(r.bits == g.bits);
    CHECK(r.directed == g.directed);
    CHECK(r.alpha == g.alpha);
    CHECK(r.seed == g.seed);
    io::write_adjacency(p2, r);
    CHECK(slurp(p1) == slurp(p2));
  }
  AdjacencyGraph s = sample_sparse(w, 0.625, 3);
  io::write_adjacency(p1, s);
  CHECK(io::read_adjacency(p1).alpha == 0.625);
}

TEST_CASE("trajectory files round-trip byte for byte") {
  fs::path p1 = tmp_dir() / "t1.csv", p2 = tmp_dir() / "t2.csv";
  StepGraphon w = StepGraphon::constant(4, 1.0);
  GridFunction g = grid_from_function([](double x) { return x - 0.5; }, 4);
  CouplingSpec c = make_coupling("zero", "linear");
  Trajectory t = simulate(w, g, nullptr, c, 0.2, 0.05, 2);
  io::write_trajectory(p1, t);
  Trajectory r = io::read_trajectory(p1);
  CHECK(r.n == t.n);
  CHECK(r.dt == t.dt);
  CHECK(r.save_every == t.save_every);
  CHECK(r.times == t.times);
  REQUIRE(r.states.size() == t.states.size());
  for (std::size_t s = 0; s < r.states.size(); ++s)
    CHECK(r.states[s].values == t.states[s].values);
  io::write_trajectory(p2, r);
  CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("coupling and bijection files round-trip byte for byte") {
  fs::path p1 = tmp_dir() / "c1.csv", p2 = tmp_dir() / "c2.csv";
  DiscreteCoupling nu = random_coupling(5, 11);
  io::write_coupling(p1, nu);
  DiscreteCoupling r = io::read_coupling(p1);
  CHECK(r.k == 5);
  CHECK(r.masses == nu.masses);
  io::write_coupling(p2, r);
  CHECK(slurp(p1) == slurp(p2));

  fs::path b1 = tmp_dir() / "b1.csv", b2 = tmp_dir() / "b2.csv";
  PiecewiseBijection theta = staircase_bijection(nu);
  io::write_bijection(b1, theta);
  PiecewiseBijection rb = io::read_bijection(b1);
  REQUIRE(rb.segments.size() == theta.segments.size());
  for (std::size_t s = 0; s < rb.segments.size(); ++s) {
    CHECK(rb.segments[s].start_x == theta.segments[s].start_x);
    CHECK(rb.segments[s].start_y == theta.segments[s].start_y);
    CHECK(rb.segments[s].length == theta.segments[s].length);
  }
  io::write_bijection(b2, rb);
  CHECK(slurp(b1) == slurp(b2));
}

TEST_CASE("missing files raise io errors") {
  CHECK_THROWS_AS(io::read_graphon(tmp_dir() / "absent.csv"), io_error);
  CHECK_THROWS_AS(io::read_trajectory(tmp_dir() / "absent.csv"), io_error);
}

TEST_CASE("malformed files are rejected") {
  fs::path p = tmp_dir() / "bad.csv";

  spit(p, "gridfn,n,2\n0.5\nnot_a_number\n");
  CHECK_THROWS_AS(io::read_gridfn(p), format_error);

  spit(p, "graphon,n,2\n");
  CHECK_THROWS_AS(io::read_graphon(p), std::runtime_error);

  spit(p, "banner,n,2,bound,1\n0.5,0.5\n0.5,0.5\n");
  CHECK_THROWS_AS(io::read_graphon(p), std::runtime_error);

  spit(p, "graphon,n,2,bound,1\n0.5,0.5\n");
  CHECK_THROWS_AS(io::read_graphon(p), format_error);

  spit(p, "adjacency,n,2,alpha,1,directed,0,seed,5\n0,1\n0,0\n");
  CHECK_THROWS_AS(io::read_adjacency(p), domain_error);

  spit(p, "adjacency,n,2,alpha,1,directed,1,seed,5\n0,2\n0,0\n");
  CHECK_THROWS_AS(io::read_adjacency(p), domain_error);

  spit(p, "adjacency,n,2,alpha,1,directed,3,seed,5\n0,1\n0,0\n");
  CHECK_THROWS_AS(io::read_adjacency(p), domain_error);

  spit(p, "trajectory,n,2,dt,0.1,save_every,1\n");
  CHECK_THROWS_AS(io::read_trajectory(p), domain_error);

  spit(p, "coupling,k,2\n0.5,0.1\n0,0.4\n");
  CHECK_THROWS_AS(io::read_coupling(p), domain_error);

  spit(p, "bijection,segments,2\n0,0,0.5\n");
  CHECK_THROWS_AS(io::read_bijection(p), format_error);

  spit(p, "bijection,segments,1\n0,0\n");
  CHECK_THROWS_AS(io::read_bijection(p), std::runtime_error);
}
