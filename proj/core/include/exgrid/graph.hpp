#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "exgrid/mask.hpp"
#include "exgrid/templates.hpp"

namespace exgrid {

// Random planar graph: points in the unit square joined by the edges of
// their Delaunay triangulation.
struct PlanarGraph {
  std::vector<Vec2> nodes;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted, no duplicates
  std::uint64_t seed = 0;
};

// n i.i.d. uniform points in the unit square from SplitMix64(seed).
// Same seed gives the same points on every platform. n >= 3.
std::vector<Vec2> sample_points(int n, std::uint64_t seed);

// Delaunay edge set via incremental insertion (Bowyer-Watson) under a
// super-triangle. Cocircular ties resolve deterministically in insertion
// (point index) order. Throws std::invalid_argument for fewer than 3 or
// duplicated points, DegenerateGeometry when all points are collinear.
class DegenerateGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
std::vector<std::pair<int, int>> delaunay(std::span<const Vec2> points);

PlanarGraph make_random_planar_graph(int n, std::uint64_t seed);

// Scales unit-square coordinates onto a grid_side x grid_side lattice with a
// channel_width margin and rasterises every edge as a channel. TemplateMeta
// records per-edge centerline node paths and the north-most node (largest y
// in unit coordinates, mapped to the top of the grid) as the stimulation
// site. grid_side >= 100.
ConductiveMask rasterize_graph(const PlanarGraph& graph, int grid_side,
                               int channel_width);

// Text format: "GRAPH <n> <m> <seed>", n lines "x y", m lines "i j".
void write_graph(const PlanarGraph& graph, const std::string& path);
PlanarGraph read_graph(const std::string& path);

}  // namespace exgrid
