#pragma once

#include <cstdint>

#include "exgrid/field2d.hpp"

namespace exgrid {

// Lattice state of the medium: activator u, recovery v, and a step counter.
// A freshly constructed state is at rest (u = v = 0 everywhere).
struct GridState {
  GridState() = default;
  GridState(int width, int height) : u(width, height), v(width, height) {}

  int width() const { return u.width(); }
  int height() const { return u.height(); }

  Field2D<double> u;
  Field2D<double> v;
  std::int64_t generation = 0;
};

}  // namespace exgrid
