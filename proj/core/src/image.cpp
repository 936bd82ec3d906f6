#include "exgrid/image.hpp"

#include <fstream>
#include <stdexcept>

namespace exgrid {

SnapshotImage render_snapshot(const GridState& state, const ConductiveMask& mask,
                              double theta) {
  if (state.width() != mask.width() || state.height() != mask.height()) {
    throw std::invalid_argument("render_snapshot: dimension mismatch");
  }
  SnapshotImage img;
  img.width = state.width();
  img.height = state.height();
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  std::size_t i = 0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x, ++i) {
      if (!mask.at(x, y)) {
        img.pixels[i] = 0;
      } else {
        img.pixels[i] = state.u.at(x, y) > theta ? 255 : 64;
      }
    }
  }
  return img;
}

void write_pgm(const SnapshotImage& image, const std::string& path) {
  if (image.pixels.size() !=
      static_cast<std::size_t>(image.width) * image.height) {
    throw std::invalid_argument("write_pgm: pixel count does not match dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

SnapshotImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  if (!(in >> magic >> w >> h >> maxval) || magic != "P5" || maxval != 255 ||
      w < 1 || h < 1) {
    throw std::runtime_error("not a supported P5 PGM: " + path);
  }
  in.get();  // single whitespace after the header
  SnapshotImage img;
  img.width = w;
  img.height = h;
  img.pixels.resize(static_cast<std::size_t>(w) * h);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
    throw std::runtime_error("truncated PGM: " + path);
  }
  return img;
}

}  // namespace exgrid
