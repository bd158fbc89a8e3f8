#include "gldp/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "gldp/common.hpp"

namespace gldp::io {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  require(ec == std::errc{}, "double formatting failed");
  return std::string(buf, end);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || ptr != e)
    throw format_error("bad numeric field '" + s + "'");
  return v;
}

namespace {

uint64_t parse_u64(const std::string& s) {
  uint64_t v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || ptr != e)
    throw format_error("bad integer field '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t c = line.find(',', pos);
    if (c == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, c - pos));
    pos = c + 1;
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw gldp::io_error("cannot open '" + path.string() + "' for writing");
  return f;
}

struct LineReader {
  std::ifstream f;
  std::filesystem::path path;
  std::size_t lineno = 0;

  explicit LineReader(const std::filesystem::path& p) : f(p), path(p) {
    if (!f) throw gldp::io_error("cannot open '" + p.string() + "'");
  }

  std::string next() {
    std::string line;
    if (!std::getline(f, line))
      throw format_error("unexpected end of '" + path.string() + "' at line " +
                         std::to_string(lineno + 1));
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  bool at_end() {
    return f.peek() == std::ifstream::traits_type::eof();
  }
};

// header of the form tag,key1,v1,key2,v2,...
std::vector<std::string> read_header(LineReader& r, const std::string& tag,
                                     const std::vector<std::string>& keys) {
  std::vector<std::string> fields = split(r.next());
  require(fields.size() == 1 + 2 * keys.size() && fields[0] == tag,
          "bad header in '" + r.path.string() + "'");
  std::vector<std::string> vals;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    require(fields[1 + 2 * i] == keys[i],
            "expected header key '" + keys[i] + "' in '" + r.path.string() +
                "'");
    vals.push_back(fields[2 + 2 * i]);
  }
  return vals;
}

void write_row(std::ofstream& f, const std::vector<double>& v,
               std::size_t begin, std::size_t count) {
  for (std::size_t j = 0; j < count; ++j) {
    if (j) f << ',';
    f << format_double(v[begin + j]);
  }
  f << '\n';
}

std::vector<double> parse_row(const std::string& line, std::size_t count,
                              const std::filesystem::path& path) {
  std::vector<std::string> fields = split(line);
  require(fields.size() == count,
          "wrong field count in '" + path.string() + "'");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = parse_double(fields[i]);
  return out;
}

}  // namespace

void write_graphon(const std::filesystem::path& path, const StepGraphon& w) {
  auto f = open_out(path);
  f << "graphon,n," << w.n << ",bound," << format_double(w.bound) << '\n';
  for (uint32_t i = 0; i < w.n; ++i)
    write_row(f, w.values, std::size_t(i) * w.n, w.n);
}

StepGraphon read_graphon(const std::filesystem::path& path) {
  LineReader r(path);
  auto vals = read_header(r, "graphon", {"n", "bound"});
  auto n = uint32_t(parse_u64(vals[0]));
  double bound = parse_double(vals[1]);
  std::vector<double> v;
  v.reserve(std::size_t(n) * n);
  for (uint32_t i = 0; i < n; ++i) {
    auto row = parse_row(r.next(), n, path);
    v.insert(v.end(), row.begin(), row.end());
  }
  return StepGraphon(n, std::move(v), bound);
}

void write_gridfn(const std::filesystem::path& path, const GridFunction& g) {
  auto f = open_out(path);
  f << "gridfn,n," << g.n << '\n';
  for (double v : g.values) f << format_double(v) << '\n';
}

GridFunction read_gridfn(const std::filesystem::path& path) {
  LineReader r(path);
  auto vals = read_header(r, "gridfn", {"n"});
  auto n = uint32_t(parse_u64(vals[0]));
  std::vector<double> v(n);
  for (uint32_t i = 0; i < n; ++i) v[i] = parse_double(r.next());
  return GridFunction(n, std::move(v));
}

void write_adjacency(const std::filesystem::path& path,
                     const AdjacencyGraph& g) {
  auto f = open_out(path);
  f << "adjacency,n," << g.n << ",alpha," << format_double(g.alpha)
    << ",directed," << (g.directed ? 1 : 0) << ",seed," << g.seed << '\n';
  for (uint32_t i = 0; i < g.n; ++i) {
    for (uint32_t j = 0; j < g.n; ++j) {
      if (j) f << ',';
      f << int(g.at(i, j));
    }
    f << '\n';
  }
}

AdjacencyGraph read_adjacency(const std::filesystem::path& path) {
  LineReader r(path);
  auto vals = read_header(r, "adjacency", {"n", "alpha", "directed", "seed"});
  auto n = uint32_t(parse_u64(vals[0]));
  double alpha = parse_double(vals[1]);
  uint64_t dir = parse_u64(vals[2]);
  require(dir <= 1, "directed flag must be 0 or 1");
  uint64_t seed = parse_u64(vals[3]);
  AdjacencyGraph g(n, dir == 1, alpha, seed, "file:" + path.string());
  for (uint32_t i = 0; i < n; ++i) {
    auto fields = split(r.next());
    require(fields.size() == n, "wrong field count in '" + path.string() + "'");
    for (uint32_t j = 0; j < n; ++j) {
      uint64_t b = parse_u64(fields[j]);
      require(b <= 1, "adjacency entries must be 0 or 1");
      g.bits[std::size_t(i) * n + j] = uint8_t(b);
    }
  }
  if (!g.directed)
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = i + 1; j < n; ++j)
        require(g.at(i, j) == g.at(j, i), "undirected bits are asymmetric");
  return g;
}

void write_trajectory(const std::filesystem::path& path,
                      const Trajectory& traj) {
  auto f = open_out(path);
  f << "trajectory,n," << traj.n << ",dt," << format_double(traj.dt)
    << ",save_every," << traj.save_every << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    f << format_double(traj.times[k]);
    for (double v : traj.states[k].values) f << ',' << format_double(v);
    f << '\n';
  }
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  LineReader r(path);
  auto vals = read_header(r, "trajectory", {"n", "dt", "save_every"});
  Trajectory traj;
  traj.n = uint32_t(parse_u64(vals[0]));
  traj.dt = parse_double(vals[1]);
  traj.save_every = uint32_t(parse_u64(vals[2]));
  while (!r.at_end()) {
    auto row = parse_row(r.next(), std::size_t(traj.n) + 1, path);
    traj.times.push_back(row[0]);
    traj.states.emplace_back(
        traj.n, std::vector<double>(row.begin() + 1, row.end()));
  }
  require(!traj.times.empty(), "trajectory has no snapshots");
  return traj;
}

void write_coupling(const std::filesystem::path& path,
                    const DiscreteCoupling& nu) {
  auto f = open_out(path);
  f << "coupling,k," << nu.k << '\n';
  for (uint32_t i = 0; i < nu.k; ++i)
    write_row(f, nu.masses, std::size_t(i) * nu.k, nu.k);
}

DiscreteCoupling read_coupling(const std::filesystem::path& path) {
  LineReader r(path);
  auto vals = read_header(r, "coupling", {"k"});
  auto k = uint32_t(parse_u64(vals[0]));
  std::vector<double> m;
  m.reserve(std::size_t(k) * k);
  for (uint32_t i = 0; i < k; ++i) {
    auto row = parse_row(r.next(), k, path);
    m.insert(m.end(), row.begin(), row.end());
  }
  return DiscreteCoupling(k, std::move(m));
}

void write_bijection(const std::filesystem::path& path,
                     const PiecewiseBijection& theta) {
  auto f = open_out(path);
  f << "bijection,segments," << theta.segments.size() << '\n';
  for (const Segment& s : theta.segments)
    f << format_double(s.start_x) << ',' << format_double(s.start_y) << ','
      << format_double(s.length) << '\n';
}

PiecewiseBijection read_bijection(const std::filesystem::path& path) {
  LineReader r(path);
  auto vals = read_header(r, "bijection", {"segments"});
  uint64_t count = parse_u64(vals[0]);
  std::vector<Segment> segs(count);
  for (uint64_t i = 0; i < count; ++i) {
    auto row = parse_row(r.next(), 3, path);
    segs[i] = {row[0], row[1], row[2]};
  }
  return PiecewiseBijection(std::move(segs));
}

}  // namespace gldp::io
