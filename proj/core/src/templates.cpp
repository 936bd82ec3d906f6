#include "exgrid/templates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace exgrid {

namespace {

double dist2_point_segment(double px, double py, const Vec2& a, const Vec2& b) {
  const double abx = b.x - a.x;
  const double aby = b.y - a.y;
  const double apx = px - a.x;
  const double apy = py - a.y;
  const double len2 = abx * abx + aby * aby;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp((apx * abx + apy * aby) / len2, 0.0, 1.0);
  const double dx = apx - t * abx;
  const double dy = apy - t * aby;
  return dx * dx + dy * dy;
}

// Paints segment cells into `owner` with `id`, returns false when a cell is
// already owned by a different id (used for branch overlap detection).
bool paint_segment(const Segment& seg, int width, int height,
                   std::vector<int>& owner, int id) {
  const double r = seg.width / 2.0;
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(seg.p0.x, seg.p1.x) - r)));
  const int x1 = std::min(width - 1, static_cast<int>(std::ceil(std::max(seg.p0.x, seg.p1.x) + r)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(seg.p0.y, seg.p1.y) - r)));
  const int y1 = std::min(height - 1, static_cast<int>(std::ceil(std::max(seg.p0.y, seg.p1.y) + r)));
  const double r2 = r * r;
  bool clean = true;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (dist2_point_segment(x, y, seg.p0, seg.p1) <= r2) {
        int& cell = owner[static_cast<std::size_t>(y) * width + x];
        if (cell != 0 && cell != id) clean = false;
        cell = id;
      }
    }
  }
  return clean;
}

}  // namespace

ConductiveMask make_free_space(int width, int height) {
  if (width < 3 || height < 3) {
    throw std::invalid_argument("make_free_space: dimensions must be >= 3");
  }
  ConductiveMask mask(width, height, true);
  TemplateMeta meta;
  meta.kind = TemplateKind::FreeSpace;
  meta.stim_site = {width / 2, height / 2};
  mask.meta = meta;
  return mask;
}

ConductiveMask make_channel(int length, int width, int margin) {
  if (length < 1 || width < 1) {
    throw std::invalid_argument("make_channel: length and width must be >= 1");
  }
  if (margin < 0) throw std::invalid_argument("make_channel: negative margin");
  ConductiveMask mask(length + 2 * margin, width + 2 * margin);
  for (int y = 0; y < width; ++y) {
    for (int x = 0; x < length; ++x) mask.set(margin + x, margin + y, true);
  }
  TemplateMeta meta;
  meta.kind = TemplateKind::Channel;
  meta.channel_width = width;
  meta.channel_length = length;
  meta.stim_site = {margin + std::min(5, (length - 1) / 2), margin + width / 2};
  meta.channel_probe = {margin + length - 1 - std::min(2, length - 1), margin + width / 2};
  mask.meta = meta;
  return mask;
}

ConductiveMask make_angles_template(const AnglesSpec& spec) {
  if (spec.n_branches < 1) {
    throw std::invalid_argument("make_angles_template: need at least one branch");
  }
  const double last_angle =
      spec.start_deg + (spec.n_branches - 1) * spec.increment_deg;
  if (!(spec.start_deg > 0.0) || !(last_angle < 180.0)) {
    throw std::invalid_argument("make_angles_template: angles must lie in (0, 180)");
  }
  if (spec.spacing <= spec.channel_width) {
    throw std::invalid_argument("make_angles_template: spacing must exceed channel width");
  }
  if (spec.channel_width < 1 || spec.branch_length < 1) {
    throw std::invalid_argument("make_angles_template: bad channel or branch size");
  }

  const int w = spec.channel_width;
  // lead_in cells before the first anchor, lead_out after the last, plus the
  // anchor cells themselves; keeps the template mirror-symmetric when
  // lead_in == lead_out.
  const int chan_len =
      spec.lead_in + (spec.n_branches - 1) * spec.spacing + spec.lead_out + 1;
  const double deg = std::numbers::pi / 180.0;

  // Abstract coordinates: channel rows [0, w), top edge y = 0, branches
  // extend upward (negative y). Branch with the largest angle sits at the
  // first anchor; adjacent centerlines then diverge with height.
  struct Branch {
    double angle;
    double ax;  // anchor x
    Vec2 tip;
  };
  std::vector<Branch> branches(spec.n_branches);
  for (int k = 0; k < spec.n_branches; ++k) {
    const double angle = spec.start_deg + k * spec.increment_deg;
    const int slot = spec.n_branches - 1 - k;  // decreasing angle along +x
    const double ax = spec.lead_in + static_cast<double>(slot) * spec.spacing;
    const Vec2 tip{ax + spec.branch_length * std::cos(angle * deg),
                   -spec.branch_length * std::sin(angle * deg)};
    branches[k] = Branch{angle, ax, tip};
  }

  // Bounding box of channel plus branch bodies, then translate into a grid
  // with `margin` impermeable padding.
  const double r = w / 2.0;
  double min_x = 0.0, max_x = chan_len - 1.0;
  double min_y = 0.0, max_y = w - 1.0;
  for (const Branch& br : branches) {
    min_x = std::min({min_x, br.ax - r, br.tip.x - r});
    max_x = std::max({max_x, br.ax + r, br.tip.x + r});
    min_y = std::min(min_y, br.tip.y - r);
  }
  const int ox = spec.margin - static_cast<int>(std::floor(min_x));
  const int oy = spec.margin - static_cast<int>(std::floor(min_y));
  const int gw = static_cast<int>(std::ceil(max_x)) + ox + 1 + spec.margin;
  const int gh = static_cast<int>(std::ceil(max_y)) + oy + 1 + spec.margin;

  ConductiveMask mask(gw, gh);
  for (int y = 0; y < w; ++y) {
    for (int x = 0; x < chan_len; ++x) mask.set(ox + x, oy + y, true);
  }

  // Overlap detection on the region strictly above the channel; shared cells
  // inside the channel band are expected at every junction.
  std::vector<int> owner(static_cast<std::size_t>(gw) * gh, 0);
  TemplateMeta meta;
  meta.kind = TemplateKind::Angles;
  meta.channel_width = w;
  meta.channel_length = chan_len;
  for (int k = 0; k < spec.n_branches; ++k) {
    const Branch& br = branches[k];
    const Segment body{{br.ax + ox, static_cast<double>(oy)},
                       {br.tip.x + ox, br.tip.y + oy},
                       static_cast<double>(w)};
    std::vector<int> scratch = owner;
    if (!paint_segment(body, gw, gh, owner, k + 1)) {
      // Re-check ignoring cells inside the channel band.
      bool real_overlap = false;
      for (int y = 0; y < oy; ++y) {
        for (int x = 0; x < gw; ++x) {
          const std::size_t i = static_cast<std::size_t>(y) * gw + x;
          if (owner[i] == k + 1 && scratch[i] != 0 && scratch[i] != k + 1) {
            real_overlap = true;
          }
        }
      }
      if (real_overlap) {
        throw std::invalid_argument(
            "make_angles_template: branches overlap at spacing " +
            std::to_string(spec.spacing));
      }
    }
    rasterize_segment(mask, body);

    const double len = std::hypot(br.tip.x - br.ax, br.tip.y - static_cast<double>(0));
    const double tpar = (len - 3.0) / len;
    BranchMeta bm;
    bm.angle_deg = br.angle;
    bm.anchor = {static_cast<int>(std::lround(br.ax)) + ox, oy};
    bm.probe = {static_cast<int>(std::lround(br.ax + (br.tip.x - br.ax) * tpar)) + ox,
                static_cast<int>(std::lround(br.tip.y * tpar)) + oy};
    meta.branches.push_back(bm);
  }

  meta.stim_site = {ox + 10, oy + w / 2};
  meta.channel_probe = {ox + chan_len - 3, oy + w / 2};
  mask.meta = meta;
  return mask;
}

ConductiveMask make_expansion_template(int channel_width, int channel_length,
                                       int reservoir_width, int reservoir_height,
                                       int margin) {
  if (channel_width < 1 || channel_width > reservoir_width) {
    throw std::invalid_argument(
        "make_expansion_template: channel width must be in [1, reservoir width]");
  }
  if (channel_length < 1 || reservoir_width < 1 || reservoir_height < 1) {
    throw std::invalid_argument("make_expansion_template: bad dimensions");
  }

  const int gw = reservoir_width + 2 * margin;
  const int gh = 2 * reservoir_height + channel_length + 2 * margin;
  ConductiveMask mask(gw, gh);

  const int top0 = margin;                            // top reservoir rows
  const int chan0 = margin + reservoir_height;        // channel rows
  const int bot0 = chan0 + channel_length;            // bottom reservoir rows
  for (int y = 0; y < reservoir_height; ++y) {
    for (int x = 0; x < reservoir_width; ++x) {
      mask.set(margin + x, top0 + y, true);
      mask.set(margin + x, bot0 + y, true);
    }
  }
  const int cx0 = margin + (reservoir_width - channel_width) / 2;
  for (int y = 0; y < channel_length; ++y) {
    for (int x = 0; x < channel_width; ++x) mask.set(cx0 + x, chan0 + y, true);
  }

  TemplateMeta meta;
  meta.kind = TemplateKind::Expansion;
  meta.channel_width = channel_width;
  meta.channel_length = channel_length;
  meta.reservoir_width = reservoir_width;
  meta.reservoir_height = reservoir_height;
  meta.stim_site = {margin + reservoir_width / 2, bot0 + reservoir_height / 2};
  // Probe rows hug the far wall: a run counts as entered only when the
  // excitation crosses the reservoir. Partially penetrating bulges that neck
  // off mid-reservoir reach well past the mouth, so near-mouth probes cannot
  // discriminate arrest.
  const int probe_rows = std::min(3, reservoir_height);
  for (int y = top0; y < top0 + probe_rows; ++y) {
    for (int x = 0; x < reservoir_width; ++x) {
      meta.probe_region.push_back({margin + x, y});
    }
  }
  mask.meta = meta;
  return mask;
}

void rasterize_segment(ConductiveMask& mask, const Segment& segment) {
  if (segment.width < 1.0) {
    throw std::invalid_argument("rasterize_segment: width must be >= 1");
  }
  const auto inside = [&](const Vec2& p) {
    return p.x >= 0.0 && p.x <= mask.width() - 1.0 && p.y >= 0.0 &&
           p.y <= mask.height() - 1.0;
  };
  if (!inside(segment.p0) || !inside(segment.p1)) {
    throw std::invalid_argument("rasterize_segment: endpoint outside grid");
  }
  const double r = segment.width / 2.0;
  const double r2 = r * r;
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(segment.p0.x, segment.p1.x) - r)));
  const int x1 = std::min(mask.width() - 1,
                          static_cast<int>(std::ceil(std::max(segment.p0.x, segment.p1.x) + r)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(segment.p0.y, segment.p1.y) - r)));
  const int y1 = std::min(mask.height() - 1,
                          static_cast<int>(std::ceil(std::max(segment.p0.y, segment.p1.y) + r)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (dist2_point_segment(x, y, segment.p0, segment.p1) <= r2) {
        mask.set(x, y, true);
      }
    }
  }
}

bool is_connected(const ConductiveMask& mask) {
  const std::int64_t total = mask.conducive_count();
  if (total == 0) return false;
  Field2D<std::uint8_t> seen(mask.width(), mask.height());
  std::vector<Coord> stack;
  for (int y = 0; y < mask.height() && stack.empty(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y)) {
        stack.push_back({x, y});
        seen.at(x, y) = 1;
        break;
      }
    }
  }
  std::int64_t reached = 0;
  while (!stack.empty()) {
    Coord c = stack.back();
    stack.pop_back();
    ++reached;
    constexpr int dx[4] = {1, -1, 0, 0};
    constexpr int dy[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      const int nx = c.x + dx[d];
      const int ny = c.y + dy[d];
      if (mask.in_bounds(nx, ny) && mask.at(nx, ny) && !seen.at(nx, ny)) {
        seen.at(nx, ny) = 1;
        stack.push_back({nx, ny});
      }
    }
  }
  return reached == total;
}

}  // namespace exgrid
