// Command-line front door for the excitable-media lattice experiments.
//
//   exgrid run       one experiment at a single excitability
//   exgrid sweep     the same experiment across a c2 range
//   exgrid graph-gen sample a random planar graph to a text file
//   exgrid render    convert an EXMASK file to a PGM image
//
// Flags override values from --config (flat key=value file).

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exgrid/config.hpp"
#include "exgrid/experiments.hpp"
#include "exgrid/graph.hpp"
#include "exgrid/image.hpp"
#include "exgrid/model.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string experiment;
  double c2 = 0.0;
  std::vector<double> c2_range;
  std::int64_t steps = -1;
  std::int64_t seed = -1;
  std::int64_t snapshot_every = -1;
  std::int64_t sample_every = -1;
  std::string out_dir;
  int threads = -1;
  double theta = -1.0;
  int channel_width = -1;
  int channel_length = -1;
  int grid_side = -1;
  int grid_width = -1;
  int grid_height = -1;
  int width_min = -1;
  int width_max = -1;
  int graph_nodes = -1;
  std::string graph_file;
  int seed_length = -1;
  std::string stim_mode;
  double stim_radius = 5.0;
};

void add_common_flags(CLI::App* cmd, CommonFlags* f, bool with_range) {
  cmd->add_option("--config", f->config_path, "key=value config file");
  cmd->add_option("--experiment", f->experiment,
                  "free | speed | profile | angles | expansion | graph");
  cmd->add_option("--c2", f->c2, "excitability control coefficient");
  if (with_range) {
    cmd->add_option("--c2-range", f->c2_range, "START STOP STEP")
        ->expected(3);
  }
  cmd->add_option("--steps", f->steps, "max generations");
  cmd->add_option("--seed", f->seed, "graph sampling seed");
  cmd->add_option("--snapshot-every", f->snapshot_every,
                  "snapshot stride in generations, 0 disables");
  cmd->add_option("--sample-every", f->sample_every, "series sample stride");
  cmd->add_option("--out", f->out_dir, "output directory");
  cmd->add_option("--threads", f->threads, "worker threads (0 = EXGRID_THREADS)");
  cmd->add_option("--theta", f->theta, "excitation detection threshold");
  cmd->add_option("--channel-width", f->channel_width, "channel width in nodes");
  cmd->add_option("--channel-length", f->channel_length, "channel length in nodes");
  cmd->add_option("--grid-side", f->grid_side, "graph raster side in nodes");
  cmd->add_option("--grid-width", f->grid_width, "free-space grid width");
  cmd->add_option("--grid-height", f->grid_height, "free-space grid height");
  cmd->add_option("--width-min", f->width_min, "expansion sweep smallest width");
  cmd->add_option("--width-max", f->width_max, "expansion sweep largest width");
  cmd->add_option("--graph-nodes", f->graph_nodes, "number of graph nodes");
  cmd->add_option("--graph-file", f->graph_file, "pre-generated GRAPH file");
  cmd->add_option("--seed-length", f->seed_length, "free-space fragment bar length");
  cmd->add_option("--stim-mode", f->stim_mode, "free-space initiation: fragment | point");
  cmd->add_option("--stim-radius", f->stim_radius, "disc stimulus radius in nodes");
}

bool given(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

exgrid::ExperimentConfig build_config(const CLI::App* cmd, const CommonFlags& f) {
  exgrid::ExperimentConfig config;
  if (!f.config_path.empty()) {
    config = exgrid::load_config_file(f.config_path);
  }
  if (given(cmd, "--experiment")) config.experiment = exgrid::parse_experiment(f.experiment);
  if (given(cmd, "--c2")) {
    config.c2 = f.c2;
    config.c2_range.reset();
  }
  if (given(cmd, "--c2-range")) {
    config.c2_range = exgrid::SweepRange{f.c2_range[0], f.c2_range[1], f.c2_range[2]};
    config.c2.reset();
  }
  if (given(cmd, "--steps")) config.steps = f.steps;
  if (given(cmd, "--seed")) config.seed = static_cast<std::uint64_t>(f.seed);
  if (given(cmd, "--snapshot-every")) config.snapshot_every = f.snapshot_every;
  if (given(cmd, "--sample-every")) config.sample_every = f.sample_every;
  if (given(cmd, "--out")) config.out_dir = f.out_dir;
  if (given(cmd, "--threads")) config.threads = f.threads;
  if (given(cmd, "--theta")) config.theta = f.theta;
  if (given(cmd, "--channel-width")) config.channel_width = f.channel_width;
  if (given(cmd, "--channel-length")) config.channel_length = f.channel_length;
  if (given(cmd, "--grid-side")) config.grid_side = f.grid_side;
  if (given(cmd, "--grid-width")) config.grid_width = f.grid_width;
  if (given(cmd, "--grid-height")) config.grid_height = f.grid_height;
  if (given(cmd, "--width-min")) config.width_min = f.width_min;
  if (given(cmd, "--width-max")) config.width_max = f.width_max;
  if (given(cmd, "--graph-nodes")) config.graph_nodes = f.graph_nodes;
  if (given(cmd, "--graph-file")) config.graph_file = f.graph_file;
  if (given(cmd, "--seed-length")) config.seed_length = f.seed_length;
  if (given(cmd, "--stim-mode")) {
    exgrid::apply_config_pair(config, "stim_mode", f.stim_mode);
  }
  if (given(cmd, "--stim-radius")) config.stim_radius = f.stim_radius;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"excitable-media lattice experiments"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "run one experiment at a single c2");
  add_common_flags(run_cmd, &run_flags, /*with_range=*/false);

  CommonFlags sweep_flags;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run an experiment across a c2 range");
  add_common_flags(sweep_cmd, &sweep_flags, /*with_range=*/true);

  std::int64_t gen_n = 50;
  std::int64_t gen_seed = 1;
  std::string gen_out = "graph.txt";
  CLI::App* gen_cmd =
      app.add_subcommand("graph-gen", "sample a random planar graph");
  gen_cmd->add_option("--n", gen_n, "number of nodes (>= 3)");
  gen_cmd->add_option("--seed", gen_seed, "sampling seed");
  gen_cmd->add_option("--out", gen_out, "output GRAPH file");

  std::string render_mask;
  std::string render_out = "mask.pgm";
  CLI::App* render_cmd =
      app.add_subcommand("render", "convert an EXMASK file to a PGM image");
  render_cmd->add_option("--mask", render_mask, "EXMASK file")->required();
  render_cmd->add_option("--out", render_out, "output PGM path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      exgrid::ExperimentConfig config = build_config(run_cmd, run_flags);
      if (config.c2_range) {
        throw std::invalid_argument("run expects a single --c2; use sweep for ranges");
      }
      exgrid::run_experiment(config);
    } else if (sweep_cmd->parsed()) {
      exgrid::ExperimentConfig config = build_config(sweep_cmd, sweep_flags);
      if (!config.c2_range) {
        throw std::invalid_argument("sweep requires --c2-range (or c2_range= in the config)");
      }
      exgrid::run_experiment(config);
    } else if (gen_cmd->parsed()) {
      exgrid::PlanarGraph graph = exgrid::make_random_planar_graph(
          static_cast<int>(gen_n), static_cast<std::uint64_t>(gen_seed));
      exgrid::write_graph(graph, gen_out);
      std::cout << "wrote " << gen_out << " (" << graph.nodes.size() << " nodes, "
                << graph.edges.size() << " edges)\n";
    } else if (render_cmd->parsed()) {
      exgrid::ConductiveMask mask = exgrid::read_mask(render_mask);
      exgrid::GridState state(mask.width(), mask.height());
      exgrid::write_pgm(exgrid::render_snapshot(state, mask), render_out);
      std::cout << "wrote " << render_out << "\n";
    }
  } catch (const exgrid::SimulationDiverged& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
