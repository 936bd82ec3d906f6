#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace exgrid {

struct Coord {
  int x = 0;
  int y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

// Dense row-major 2-D array with a one-cell ghost ring around the logical
// region. The ring is zero-initialised and never written through at(), so
// stencil kernels can read (x-1..x+1, y-1..y+1) for any logical cell without
// bounds checks.
template <typename T>
class Field2D {
 public:
  Field2D() = default;

  Field2D(int width, int height, T fill = T{})
      : width_(width), height_(height), stride_(width + 2) {
    if (width < 1 || height < 1) {
      throw std::invalid_argument("Field2D: dimensions must be positive");
    }
    data_.assign(static_cast<std::size_t>(stride_) * (height + 2), T{});
    if (fill != T{}) {
      for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) data_[index(x, y)] = fill;
      }
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int stride() const { return stride_; }
  bool empty() const { return data_.empty(); }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  // Flat index into the padded buffer for logical cell (x, y).
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y + 1) * stride_ + (x + 1);
  }

  T& at(int x, int y) { return data_[index(x, y)]; }
  const T& at(int x, int y) const { return data_[index(x, y)]; }

  T* raw() { return data_.data(); }
  const T* raw() const { return data_.data(); }
  std::size_t raw_size() const { return data_.size(); }

  void fill(T value) {
    for (int y = 0; y < height_; ++y) {
      for (int x = 0; x < width_; ++x) data_[index(x, y)] = value;
    }
  }

  bool same_shape(int w, int h) const { return w == width_ && h == height_; }

  friend bool operator==(const Field2D& a, const Field2D& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  int stride_ = 0;
  std::vector<T> data_;
};

}  // namespace exgrid
