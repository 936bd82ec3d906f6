#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exgrid {

enum class ExperimentKind { Free, Speed, Profile, Angles, Expansion, Graph };

ExperimentKind parse_experiment(const std::string& name);
std::string to_string(ExperimentKind kind);

struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::vector<double> values() const;  // inclusive of stop up to half a step
};

// Experiment description. Values of -1 mean "use the experiment default".
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Free;
  std::optional<double> c2;
  std::optional<SweepRange> c2_range;
  std::int64_t steps = -1;
  std::uint64_t seed = 1;
  std::int64_t snapshot_every = 150;
  std::int64_t sample_every = 100;
  std::string out_dir = "out";
  int threads = 0;
  double theta = 0.04;

  // Template overrides.
  int grid_width = -1;      // free space
  int grid_height = -1;
  int channel_length = -1;  // channel experiments / expansion channel
  int channel_width = -1;
  int width_min = -1;       // expansion width sweep
  int width_max = -1;
  int grid_side = -1;       // graph rasterisation
  int graph_nodes = -1;
  std::string graph_file;   // pre-generated graph instead of sampling
  int seed_length = -1;      // free-space fragment arc length
  double stim_radius = 5.0;  // disc stimulus radius
  // Free-space initiation: an open fragment (bar with a refractory shadow)
  // or a plain point stimulus (disc).
  enum class StimMode { Fragment, Point };
  StimMode stim_mode = StimMode::Fragment;

  std::vector<double> c2_values() const;
  std::int64_t effective_steps() const;
  void validate() const;
};

// Flat key=value file, one pair per line, '#' starts a comment.
ExperimentConfig load_config_file(const std::string& path);

// Applies one key=value pair; throws std::invalid_argument for unknown keys
// or unparsable values.
void apply_config_pair(ExperimentConfig& config, const std::string& key,
                       const std::string& value);

}  // namespace exgrid
