#include "exgrid/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "exgrid/rng.hpp"

namespace exgrid {

std::vector<Vec2> sample_points(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("sample_points: need at least 3 points");
  SplitMix64 rng(seed);
  std::vector<Vec2> pts(n);
  for (int i = 0; i < n; ++i) {
    const double x = rng.next_double();
    const double y = rng.next_double();
    pts[i] = Vec2{x, y};
  }
  return pts;
}

namespace {

struct Tri {
  int a, b, c;
};

double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Strictly inside the circumcircle of (a, b, c); ties (cocircular within
// floating-point evaluation) count as outside, so earlier-inserted
// configurations win deterministically.
bool in_circumcircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  const double adx = a.x - p.x, ady = a.y - p.y;
  const double bdx = b.x - p.x, bdy = b.y - p.y;
  const double cdx = c.x - p.x, cdy = c.y - p.y;
  const double ad = adx * adx + ady * ady;
  const double bd = bdx * bdx + bdy * bdy;
  const double cd = cdx * cdx + cdy * cdy;
  double det = adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
               ad * (bdx * cdy - bdy * cdx);
  if (orient(a, b, c) < 0.0) det = -det;
  return det > 0.0;
}

}  // namespace

std::vector<std::pair<int, int>> delaunay(std::span<const Vec2> points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw std::invalid_argument("delaunay: need at least 3 points");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (points[i].x == points[j].x && points[i].y == points[j].y) {
        throw std::invalid_argument("delaunay: duplicate points");
      }
    }
  }

  double min_x = points[0].x, max_x = points[0].x;
  double min_y = points[0].y, max_y = points[0].y;
  for (const Vec2& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1.0});

  bool all_collinear = true;
  for (int k = 2; k < n && all_collinear; ++k) {
    if (std::fabs(orient(points[0], points[1], points[k])) >
        1e-12 * span * span) {
      all_collinear = false;
    }
  }
  if (all_collinear) throw DegenerateGeometry("delaunay: all points collinear");

  // Super-triangle far enough out that every ghost circumcircle acts as a
  // half-plane: thin slivers of nearly collinear points have circumradii
  // orders of magnitude above the point span, and the super vertices must
  // stay outside those circles.
  const double cx = (min_x + max_x) / 2.0;
  const double cy = (min_y + max_y) / 2.0;
  const double d = 1e5 * span;
  std::vector<Vec2> pts(points.begin(), points.end());
  pts.push_back({cx - 3.0 * d, cy - d});
  pts.push_back({cx + 3.0 * d, cy - d});
  pts.push_back({cx, cy + 3.0 * d});
  const int s0 = n, s1 = n + 1, s2 = n + 2;

  std::vector<Tri> tris{{s0, s1, s2}};
  std::vector<Tri> next;
  std::map<std::pair<int, int>, int> edge_count;

  for (int p = 0; p < n; ++p) {
    edge_count.clear();
    next.clear();
    for (const Tri& t : tris) {
      if (in_circumcircle(pts[t.a], pts[t.b], pts[t.c], pts[p])) {
        auto bump = [&](int u, int v) {
          edge_count[{std::min(u, v), std::max(u, v)}]++;
        };
        bump(t.a, t.b);
        bump(t.b, t.c);
        bump(t.c, t.a);
      } else {
        next.push_back(t);
      }
    }
    for (const auto& [edge, count] : edge_count) {
      if (count == 1) next.push_back(Tri{edge.first, edge.second, p});
    }
    tris.swap(next);
  }

  std::vector<std::pair<int, int>> edges;
  for (const Tri& t : tris) {
    if (t.a >= n || t.b >= n || t.c >= n) continue;
    auto add = [&](int u, int v) {
      edges.emplace_back(std::min(u, v), std::max(u, v));
    };
    add(t.a, t.b);
    add(t.b, t.c);
    add(t.c, t.a);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

PlanarGraph make_random_planar_graph(int n, std::uint64_t seed) {
  PlanarGraph g;
  g.nodes = sample_points(n, seed);
  g.edges = delaunay(g.nodes);
  g.seed = seed;
  return g;
}

namespace {

std::vector<Coord> bresenham(Coord a, Coord b) {
  std::vector<Coord> path;
  int x = a.x, y = a.y;
  const int dx = std::abs(b.x - a.x), dy = -std::abs(b.y - a.y);
  const int sx = a.x < b.x ? 1 : -1, sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  while (true) {
    path.push_back({x, y});
    if (x == b.x && y == b.y) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
  return path;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

ConductiveMask rasterize_graph(const PlanarGraph& graph, int grid_side,
                               int channel_width) {
  if (grid_side < 100) throw std::invalid_argument("rasterize_graph: grid_side < 100");
  if (channel_width < 1) throw std::invalid_argument("rasterize_graph: channel width < 1");
  if (graph.nodes.empty()) throw std::invalid_argument("rasterize_graph: empty graph");

  const int margin = channel_width;
  const double usable = grid_side - 1 - 2 * margin;
  auto map = [&](const Vec2& p) {
    return Vec2{margin + p.x * usable, margin + (1.0 - p.y) * usable};
  };
  auto map_node = [&](const Vec2& p) {
    const Vec2 m = map(p);
    return Coord{static_cast<int>(std::lround(m.x)), static_cast<int>(std::lround(m.y))};
  };

  ConductiveMask mask(grid_side, grid_side);
  TemplateMeta meta;
  meta.kind = TemplateKind::Graph;
  meta.channel_width = channel_width;

  for (const auto& [i, j] : graph.edges) {
    const Segment seg{map(graph.nodes[i]), map(graph.nodes[j]),
                      static_cast<double>(channel_width)};
    rasterize_segment(mask, seg);
    std::vector<Coord> path = bresenham(map_node(graph.nodes[i]), map_node(graph.nodes[j]));
    // Centerline nodes are conducive by construction even at width 1, where
    // endpoint rounding could otherwise leave a cell just outside the stroke.
    for (const Coord& c : path) mask.set(c.x, c.y, true);
    meta.edge_paths.push_back(std::move(path));
  }

  // North-most node (largest y in unit coordinates); ties toward smaller x,
  // then smaller index.
  int best = 0;
  for (int i = 1; i < static_cast<int>(graph.nodes.size()); ++i) {
    const Vec2& p = graph.nodes[i];
    const Vec2& q = graph.nodes[best];
    if (p.y > q.y || (p.y == q.y && p.x < q.x)) best = i;
  }
  meta.stim_site = map_node(graph.nodes[best]);
  mask.meta = meta;
  return mask;
}

void write_graph(const PlanarGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "GRAPH " << graph.nodes.size() << " " << graph.edges.size() << " "
      << graph.seed << "\n";
  for (const Vec2& p : graph.nodes) {
    out << format_double(p.x) << " " << format_double(p.y) << "\n";
  }
  for (const auto& [i, j] : graph.edges) out << i << " " << j << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

PlanarGraph read_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string magic;
  std::size_t n = 0, m = 0;
  std::uint64_t seed = 0;
  if (!(in >> magic >> n >> m >> seed) || magic != "GRAPH") {
    throw std::runtime_error("not a GRAPH file: " + path);
  }
  PlanarGraph g;
  g.seed = seed;
  g.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in >> g.nodes[i].x >> g.nodes[i].y)) {
      throw std::runtime_error("truncated GRAPH nodes in " + path);
    }
  }
  g.edges.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    if (!(in >> g.edges[e].first >> g.edges[e].second)) {
      throw std::runtime_error("truncated GRAPH edges in " + path);
    }
    const int lim = static_cast<int>(n);
    if (g.edges[e].first < 0 || g.edges[e].first >= lim || g.edges[e].second < 0 ||
        g.edges[e].second >= lim || g.edges[e].first == g.edges[e].second) {
      throw std::runtime_error("bad GRAPH edge in " + path);
    }
  }
  return g;
}

}  // namespace exgrid
