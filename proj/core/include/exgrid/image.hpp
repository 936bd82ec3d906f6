#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exgrid/grid_state.hpp"
#include "exgrid/mask.hpp"

namespace exgrid {

struct SnapshotImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, top to bottom
};

// Bit-exact pixel mapping: impermeable 0, conducive at rest (u <= theta) 64,
// excited (u > theta) 255.
SnapshotImage render_snapshot(const GridState& state, const ConductiveMask& mask,
                              double theta = 0.04);

// Binary PGM: "P5\n<w> <h>\n255\n" followed by the raw bytes.
void write_pgm(const SnapshotImage& image, const std::string& path);
SnapshotImage read_pgm(const std::string& path);

}  // namespace exgrid
