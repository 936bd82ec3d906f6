#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exgrid/config.hpp"
#include "exgrid/grid_state.hpp"
#include "exgrid/mask.hpp"

namespace exgrid {

struct FreeRow {
  double c2 = 0.0;
  bool survived = false;
  std::int64_t collapse_generation = -1;  // -1 when survived
  double zeta = 0.0;
  std::int64_t final_generation = 0;
};

struct SpeedRow {
  double c2 = 0.0;
  std::optional<double> speed;  // grid-length per time unit
  std::int64_t steps_observed = 0;
};

struct ProfileRow {
  double c2 = 0.0;
  double amplitude = 0.0;
  int width_nodes = 0;
};

struct AngleRow {
  double c2 = 0.0;
  std::optional<double> alpha_max;
  double zeta = 0.0;
};

struct ExpansionRow {
  double c2 = 0.0;
  int width = 0;
  bool entered = false;
};

struct GraphRow {
  double c2 = 0.0;
  double zeta_edges = 0.0;
  double zeta_nodes = 0.0;
};

// Everything run_experiment measured, in the same order as the CSV rows.
struct ExperimentSummary {
  std::vector<FreeRow> free_rows;
  std::vector<SpeedRow> speed_rows;
  std::vector<ProfileRow> profile_rows;
  std::vector<AngleRow> angle_rows;
  std::vector<ExpansionRow> expansion_rows;
  std::vector<std::pair<double, std::optional<int>>> wmin_rows;
  std::vector<GraphRow> graph_rows;
};

// Fragment initiation for free-space runs. Every compact stimulus in a
// resting medium grows a closed front, which cannot collapse in the
// sub-excitable regime, so wave-fragments are made in two phases: a
// wall-to-wall bar over a refractory shadow develops into a clean planar
// front, and after develop_steps the state is cut down to a finite arc with
// fresh medium on both sides. The arc keeps its own refractory wake and two
// free ends; its end dynamics then decide growth, soliton-like translation
// or collapse. Geometry-constrained templates use the plain disc stimulus.
struct FragmentProtocol {
  int arc_length = 45;      // kept arc width at the cut
  int develop_steps = 8000; // planar-front development before the cut
  int bar_thickness = 5;
  int shadow_depth = 25;
  int bar_offset = 40;      // bar distance above the bottom edge
  double amplitude = 1.0;
};

// Phase one: the full-width bar and its refractory shadow.
void seed_planar_front(GridState& state, const ConductiveMask& mask,
                       const FragmentProtocol& protocol = {});

// Phase two: keep only the columns within arc_length around center_x.
void cut_to_arc(GridState& state, int center_x, int arc_length);

// Builds the template, stimulates its canonical site, runs every sweep point
// and writes the artifact set (mask file, per-run activity series and
// snapshots, experiment CSVs) under config.out_dir. Throws on invalid
// configuration, I/O failure, or numerical divergence.
ExperimentSummary run_experiment(const ExperimentConfig& config);

}  // namespace exgrid
