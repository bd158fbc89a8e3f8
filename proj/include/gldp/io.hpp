#pragma once

#include <filesystem>
#include <string>

#include "gldp/dynamics.hpp"
#include "gldp/graphon.hpp"
#include "gldp/grid.hpp"
#include "gldp/sampling.hpp"
#include "gldp/staircase.hpp"

namespace gldp::io {

// Shortest representation that round-trips the exact double, so rewriting
// a file from equal inputs reproduces it byte for byte.
std::string format_double(double v);

// Parses a full string as a double; rejects trailing junk.
double parse_double(const std::string& s);

void write_graphon(const std::filesystem::path& path, const StepGraphon& w);
StepGraphon read_graphon(const std::filesystem::path& path);

void write_gridfn(const std::filesystem::path& path, const GridFunction& f);
GridFunction read_gridfn(const std::filesystem::path& path);

void write_adjacency(const std::filesystem::path& path,
                     const AdjacencyGraph& g);
AdjacencyGraph read_adjacency(const std::filesystem::path& path);

void write_trajectory(const std::filesystem::path& path,
                      const Trajectory& traj);
Trajectory read_trajectory(const std::filesystem::path& path);

void write_coupling(const std::filesystem::path& path,
                    const DiscreteCoupling& nu);
DiscreteCoupling read_coupling(const std::filesystem::path& path);

void write_bijection(const std::filesystem::path& path,
                     const PiecewiseBijection& theta);
PiecewiseBijection read_bijection(const std::filesystem::path& path);

}  // namespace gldp::io
