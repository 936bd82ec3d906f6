#pragma once

#include "exgrid/mask.hpp"

namespace exgrid {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Thick line segment in node units; rasterises to every node within
// width/2 of the centerline (ends capped by half-discs).
struct Segment {
  Vec2 p0;
  Vec2 p1;
  double width = 1.0;
};

// All nodes conducive. width, height >= 3.
ConductiveMask make_free_space(int width, int height);

// Horizontal conducive strip length x width centered in a grid padded by
// `margin` impermeable nodes on every side.
ConductiveMask make_channel(int length, int width, int margin = 2);

struct AnglesSpec {
  int n_branches = 15;
  double start_deg = 20.0;      // smallest branch angle
  double increment_deg = 10.0;
  int spacing = 60;             // distance between adjacent anchors
  int channel_width = 20;
  int branch_length = 200;
  int lead_in = 100;            // central channel before the first anchor
  int lead_out = 100;           // and after the last
  int margin = 2;
};

// Central horizontal channel with lateral branches fanning out on one side.
// Branch k leaves at start_deg + k * increment_deg, measured between the
// central propagation direction and the branch direction. Branches are
// anchored in order of decreasing angle along the propagation direction,
// which keeps adjacent branches from crossing at the default spacing.
// TemplateMeta lists branches sorted by angle with anchor and far-end probe.
ConductiveMask make_angles_template(const AnglesSpec& spec = {});

// Two reservoirs stacked vertically, connected by a channel of the given
// width. Stimulation site in the bottom reservoir; probe region in the top
// reservoir at least 5 rows past the channel mouth.
ConductiveMask make_expansion_template(int channel_width, int channel_length = 460,
                                       int reservoir_width = 25,
                                       int reservoir_height = 21, int margin = 2);

// Marks conducive every node whose distance to the segment is <= width/2.
// Union semantics, idempotent. Throws std::invalid_argument when an endpoint
// lies outside the grid or width < 1.
void rasterize_segment(ConductiveMask& mask, const Segment& segment);

// True when the conducive region is a single 4-connected component.
bool is_connected(const ConductiveMask& mask);

}  // namespace exgrid
