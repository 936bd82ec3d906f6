#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exgrid/field2d.hpp"

namespace exgrid {

enum class TemplateKind { FreeSpace, Channel, Angles, Expansion, Graph };

std::string to_string(TemplateKind kind);

struct BranchMeta {
  double angle_deg = 0.0;  // between central propagation direction and branch
  Coord anchor;            // junction point on the central channel
  Coord probe;             // conducive node near the branch far end
};

// Geometry bookkeeping carried by a mask so measurements can locate
// stimulation sites, branch probes and edge centerlines without re-deriving
// the construction.
struct TemplateMeta {
  TemplateKind kind = TemplateKind::FreeSpace;
  int channel_width = 0;
  int channel_length = 0;
  Coord stim_site;
  Coord channel_probe;  // near the far end of the central channel

  // Angles template: one entry per lateral branch, sorted by angle.
  std::vector<BranchMeta> branches;

  // Expansion template.
  int reservoir_width = 0;
  int reservoir_height = 0;
  std::vector<Coord> probe_region;  // nodes >= 5 rows into the far reservoir

  // Graph template: rasterised centerline node path per edge.
  std::vector<std::vector<Coord>> edge_paths;
};

// Boolean lattice marking medium (conducive) vs. impermeable nodes.
// Non-conducive nodes never take part in the dynamics.
struct ConductiveMask {
  ConductiveMask() = default;
  ConductiveMask(int width, int height, bool all_conducive = false)
      : cells(width, height, all_conducive ? std::uint8_t{1} : std::uint8_t{0}) {}

  int width() const { return cells.width(); }
  int height() const { return cells.height(); }
  bool in_bounds(int x, int y) const { return cells.in_bounds(x, y); }
  bool at(int x, int y) const { return cells.at(x, y) != 0; }
  void set(int x, int y, bool conducive) { cells.at(x, y) = conducive ? 1 : 0; }

  std::int64_t conducive_count() const;

  Field2D<std::uint8_t> cells;
  std::optional<TemplateMeta> meta;
};

// Portable text format: header "EXMASK <width> <height>", then height rows
// of width characters, '#' conducive, '.' non-conducive.
void write_mask(const ConductiveMask& mask, const std::string& path);
ConductiveMask read_mask(const std::string& path);

}  // namespace exgrid
