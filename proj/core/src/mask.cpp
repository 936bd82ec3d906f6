#include "exgrid/mask.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exgrid {

std::string to_string(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::FreeSpace: return "free-space";
    case TemplateKind::Channel: return "channel";
    case TemplateKind::Angles: return "angles";
    case TemplateKind::Expansion: return "expansion";
    case TemplateKind::Graph: return "graph";
  }
  return "unknown";
}

std::int64_t ConductiveMask::conducive_count() const {
  std::int64_t n = 0;
  for (int y = 0; y < height(); ++y) {
    for (int x = 0; x < width(); ++x) n += cells.at(x, y) != 0;
  }
  return n;
}

void write_mask(const ConductiveMask& mask, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "EXMASK " << mask.width() << " " << mask.height() << "\n";
  std::string row(static_cast<std::size_t>(mask.width()), '.');
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) row[x] = mask.at(x, y) ? '#' : '.';
    out << row << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

ConductiveMask read_mask(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string magic;
  int w = 0, h = 0;
  if (!(in >> magic >> w >> h) || magic != "EXMASK") {
    throw std::runtime_error("not an EXMASK file: " + path);
  }
  if (w < 1 || h < 1) throw std::runtime_error("bad EXMASK dimensions in " + path);
  std::string line;
  std::getline(in, line);  // rest of header line
  ConductiveMask mask(w, h);
  for (int y = 0; y < h; ++y) {
    if (!std::getline(in, line) || static_cast<int>(line.size()) < w) {
      throw std::runtime_error("truncated EXMASK row in " + path);
    }
    for (int x = 0; x < w; ++x) {
      char c = line[x];
      if (c != '#' && c != '.') {
        throw std::runtime_error("bad EXMASK cell character in " + path);
      }
      mask.set(x, y, c == '#');
    }
  }
  return mask;
}

}  // namespace exgrid
