#include "exgrid/experiments.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "exgrid/csv.hpp"
#include "exgrid/graph.hpp"
#include "exgrid/image.hpp"
#include "exgrid/measures.hpp"
#include "exgrid/model.hpp"
#include "exgrid/templates.hpp"

namespace fs = std::filesystem;

namespace exgrid {

namespace {

std::string fixed6(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

std::string pad7(std::int64_t v) {
  std::string s = std::to_string(v);
  while (s.size() < 7) s.insert(s.begin(), '0');
  return s;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             ": " + ec.message());
  }
}

CsvValue opt_double(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

struct RunSetup {
  const ConductiveMask* mask = nullptr;
  FhnParams params;
  std::int64_t max_steps = 0;
  int stop_front_x = -1;
};

// Simulation with the snapshot observer; artifact files are written
// separately so multi-phase runs share one run directory.
RunRecord run_sim(const RunSetup& setup, GridState& state,
                  const ExperimentConfig& config, const fs::path& run_dir) {
  RunOptions opts;
  opts.max_steps = setup.max_steps;
  opts.theta = config.theta;
  opts.sample_every = config.sample_every;
  opts.snapshot_every = config.snapshot_every;
  opts.threads = config.threads;
  opts.stop_front_x = setup.stop_front_x;
  if (opts.snapshot_every > 0) {
    const ConductiveMask* mask = setup.mask;
    const double theta = config.theta;
    const fs::path dir = run_dir;
    opts.snapshot_hook = [mask, theta, dir](const GridState& s) {
      write_pgm(render_snapshot(s, *mask, theta),
                (dir / ("snap_" + pad7(s.generation) + ".pgm")).string());
    };
  }
  return run(state, *setup.mask, setup.params, opts);
}

void write_run_artifacts(const RunRecord& record, const ConductiveMask& mask,
                         const fs::path& run_dir) {
  CsvWriter activity((run_dir / "activity.csv").string(),
                     {"generation", "excited_count"});
  for (const auto& [gen, count] : record.excited_series) {
    activity.row({gen, count});
  }
  activity.close();

  // Cumulative visited mask, same pixel scheme as snapshots.
  SnapshotImage vis;
  vis.width = mask.width();
  vis.height = mask.height();
  vis.pixels.resize(static_cast<std::size_t>(vis.width) * vis.height);
  std::size_t i = 0;
  for (int y = 0; y < vis.height; ++y) {
    for (int x = 0; x < vis.width; ++x, ++i) {
      if (!mask.at(x, y)) {
        vis.pixels[i] = 0;
      } else {
        vis.pixels[i] = record.visited.at(x, y) ? 255 : 64;
      }
    }
  }
  write_pgm(vis, (run_dir / "visited.pgm").string());
}

// One simulation with the standard observers: activity series CSV, visited
// mask and PGM snapshots under out_dir/runs/<label>/.
RunRecord run_one(const RunSetup& setup, GridState& state,
                  const ExperimentConfig& config, const std::string& label) {
  const fs::path run_dir = fs::path(config.out_dir) / "runs" / label;
  ensure_dir(run_dir);
  RunRecord record = run_sim(setup, state, config, run_dir);
  write_run_artifacts(record, *setup.mask, run_dir);
  return record;
}

FhnParams params_for(double c2) {
  FhnParams p;
  p.c2 = c2;
  return p;
}

int value_or(int v, int fallback) { return v >= 0 ? v : fallback; }

}  // namespace

void seed_planar_front(GridState& state, const ConductiveMask& mask,
                       const FragmentProtocol& protocol) {
  const int h = state.height();
  const int bar0 = h - protocol.bar_offset;
  if (bar0 < 0 || bar0 + protocol.bar_thickness + protocol.shadow_depth > h) {
    throw std::invalid_argument("seed_planar_front: bar does not fit the grid");
  }
  for (int y = bar0; y < bar0 + protocol.bar_thickness; ++y) {
    for (int x = 0; x < state.width(); ++x) {
      if (mask.at(x, y)) state.u.at(x, y) = protocol.amplitude;
    }
  }
  for (int y = bar0 + protocol.bar_thickness;
       y < bar0 + protocol.bar_thickness + protocol.shadow_depth; ++y) {
    for (int x = 0; x < state.width(); ++x) {
      if (mask.at(x, y)) state.v.at(x, y) = 1.0;
    }
  }
}

void cut_to_arc(GridState& state, int center_x, int arc_length) {
  if (arc_length < 1) throw std::invalid_argument("cut_to_arc: arc_length < 1");
  const int x0 = center_x - arc_length / 2;
  const int x1 = x0 + arc_length;  // [x0, x1)
  for (int y = 0; y < state.height(); ++y) {
    for (int x = 0; x < state.width(); ++x) {
      if (x < x0 || x >= x1) {
        state.u.at(x, y) = 0.0;
        state.v.at(x, y) = 0.0;
      }
    }
  }
}

namespace {

RunRecord merge_records(RunRecord first, RunRecord second) {
  RunRecord out = std::move(second);
  out.initial_excited = first.initial_excited;
  out.excited_series.insert(out.excited_series.begin(),
                            first.excited_series.begin(),
                            first.excited_series.end());
  out.front_series.insert(out.front_series.begin(), first.front_series.begin(),
                          first.front_series.end());
  for (int y = 0; y < out.visited.height(); ++y) {
    for (int x = 0; x < out.visited.width(); ++x) {
      out.visited.at(x, y) =
          static_cast<std::uint8_t>(out.visited.at(x, y) | first.visited.at(x, y));
    }
  }
  return out;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  config.validate();
  ensure_dir(config.out_dir);
  const fs::path out(config.out_dir);
  const std::vector<double> c2s = config.c2_values();
  const std::int64_t max_steps = config.effective_steps();
  ExperimentSummary summary;

  switch (config.experiment) {
    case ExperimentKind::Free: {
      const int w = value_or(config.grid_width, 400);
      const int h = value_or(config.grid_height, 400);
      const ConductiveMask mask = make_free_space(w, h);
      write_mask(mask, (out / "mask.exmask").string());
      CsvWriter csv((out / "free.csv").string(),
                    {"c2", "survived", "collapse_generation", "coverage_zeta"});
      FragmentProtocol protocol;
      if (config.seed_length > 0) protocol.arc_length = config.seed_length;
      for (double c2 : c2s) {
        GridState state(w, h);
        RunRecord rec;
        const std::string label = "c2_" + fixed6(c2);
        if (config.stim_mode == ExperimentConfig::StimMode::Point) {
          stimulate(state, mask, mask.meta->stim_site, config.stim_radius);
          RunSetup setup{&mask, params_for(c2), max_steps, -1};
          rec = run_one(setup, state, config, label);
        } else {
          const fs::path run_dir = out / "runs" / label;
          ensure_dir(run_dir);
          seed_planar_front(state, mask, protocol);
          const std::int64_t develop =
              std::min<std::int64_t>(protocol.develop_steps, max_steps);
          RunSetup develop_setup{&mask, params_for(c2), develop, -1};
          RunRecord first = run_sim(develop_setup, state, config, run_dir);
          cut_to_arc(state, w / 2, protocol.arc_length);
          RunSetup rest{&mask, params_for(c2), max_steps - develop, -1};
          RunRecord second = run_sim(rest, state, config, run_dir);
          rec = merge_records(std::move(first), std::move(second));
          write_run_artifacts(rec, mask, run_dir);
        }
        FreeRow row;
        row.c2 = c2;
        row.survived = rec.final_excited > 0;
        row.collapse_generation = rec.extinction_generation;
        row.zeta = coverage(rec.visited, mask).zeta;
        row.final_generation = rec.final_generation;
        summary.free_rows.push_back(row);
        csv.row({c2, static_cast<std::int64_t>(row.survived),
                 row.survived ? CsvValue{std::monostate{}}
                              : CsvValue{row.collapse_generation},
                 row.zeta});
      }
      csv.close();
      break;
    }

    case ExperimentKind::Speed: {
      const int len = value_or(config.channel_length, 1700);
      const int cw = value_or(config.channel_width, 20);
      const ConductiveMask mask = make_channel(len, cw);
      write_mask(mask, (out / "mask.exmask").string());
      CsvWriter csv((out / "speed.csv").string(), {"c2", "speed", "steps_observed"});
      for (double c2 : c2s) {
        GridState state(mask.width(), mask.height());
        stimulate(state, mask, mask.meta->stim_site);
        RunSetup setup{&mask, params_for(c2), max_steps, mask.width() - 8};
        RunRecord rec = run_one(setup, state, config, "c2_" + fixed6(c2));
        SpeedRow row;
        row.c2 = c2;
        row.speed = measure_speed(rec.front_series, setup.params);
        row.steps_observed = rec.final_generation;
        summary.speed_rows.push_back(row);
        csv.row({c2, opt_double(row.speed), row.steps_observed});
      }
      csv.close();
      break;
    }

    case ExperimentKind::Profile: {
      const int len = value_or(config.channel_length, 600);
      const int cw = value_or(config.channel_width, 20);
      const ConductiveMask mask = make_channel(len, cw);
      write_mask(mask, (out / "mask.exmask").string());
      CsvWriter csv((out / "profile.csv").string(),
                    {"c2", "amplitude", "width_nodes"});
      for (double c2 : c2s) {
        GridState state(mask.width(), mask.height());
        stimulate(state, mask, mask.meta->stim_site);
        // Let the front develop over most of the channel, then cut across it.
        RunSetup setup{&mask, params_for(c2), max_steps, (mask.width() * 7) / 10};
        const std::string label = "c2_" + fixed6(c2);
        RunRecord rec = run_one(setup, state, config, label);
        const Profile prof = profile(state, mask, mask.meta->stim_site.y);
        ProfileRow row;
        row.c2 = c2;
        row.amplitude = amplitude(prof);
        row.width_nodes = profile_width(prof, config.theta);
        summary.profile_rows.push_back(row);
        csv.row({c2, row.amplitude, static_cast<std::int64_t>(row.width_nodes)});
        CsvWriter dump((out / "runs" / label / "profile.csv").string(),
                       {"x", "u", "v"});
        for (std::size_t x = 0; x < prof.u.size(); ++x) {
          dump.row({static_cast<std::int64_t>(x), prof.u[x], prof.v[x]});
        }
        dump.close();
      }
      csv.close();
      break;
    }

    case ExperimentKind::Angles: {
      AnglesSpec spec;
      spec.channel_width = value_or(config.channel_width, spec.channel_width);
      const ConductiveMask mask = make_angles_template(spec);
      write_mask(mask, (out / "mask.exmask").string());
      CsvWriter csv((out / "angles.csv").string(),
                    {"c2", "alpha_max", "coverage_zeta"});
      for (double c2 : c2s) {
        GridState state(mask.width(), mask.height());
        stimulate(state, mask, mask.meta->stim_site);
        RunSetup setup{&mask, params_for(c2), max_steps, -1};
        RunRecord rec = run_one(setup, state, config, "c2_" + fixed6(c2));
        const AngleResult ar = branch_entry(rec, *mask.meta);
        AngleRow row;
        row.c2 = c2;
        row.alpha_max = ar.alpha_max;
        row.zeta = coverage(rec.visited, mask).zeta;
        summary.angle_rows.push_back(row);
        csv.row({c2, opt_double(row.alpha_max), row.zeta});
      }
      csv.close();
      break;
    }

    case ExperimentKind::Expansion: {
      std::vector<int> widths;
      if (config.channel_width >= 0) {
        widths.push_back(config.channel_width);
      } else {
        const int lo = value_or(config.width_min, 6);
        const int hi = value_or(config.width_max, 20);
        if (lo > hi) throw std::invalid_argument("width_min exceeds width_max");
        for (int w = lo; w <= hi; ++w) widths.push_back(w);
      }
      const int chan_len = value_or(config.channel_length, 460);
      CsvWriter csv((out / "expansion.csv").string(), {"c2", "width", "entered"});
      CsvWriter wmin_csv((out / "wmin.csv").string(), {"c2", "w_min"});
      bool mask_written = false;
      for (double c2 : c2s) {
        std::vector<std::pair<int, bool>> entries;
        for (int w : widths) {
          const ConductiveMask mask = make_expansion_template(w, chan_len);
          if (!mask_written) {
            write_mask(mask, (out / "mask.exmask").string());
            mask_written = true;
          }
          GridState state(mask.width(), mask.height());
          stimulate(state, mask, mask.meta->stim_site);
          RunSetup setup{&mask, params_for(c2), max_steps, -1};
          const std::string label = "c2_" + fixed6(c2) + "_w" +
                                    (w < 10 ? "0" : "") + std::to_string(w);
          RunRecord rec = run_one(setup, state, config, label);
          ExpansionRow row;
          row.c2 = c2;
          row.width = w;
          row.entered = expansion_entry(rec, *mask.meta);
          summary.expansion_rows.push_back(row);
          entries.emplace_back(w, row.entered);
          csv.row({c2, static_cast<std::int64_t>(w),
                   static_cast<std::int64_t>(row.entered)});
        }
        const std::optional<int> wmin = min_entry_width(entries);
        summary.wmin_rows.emplace_back(c2, wmin);
        wmin_csv.row({c2, wmin ? CsvValue{static_cast<std::int64_t>(*wmin)}
                               : CsvValue{std::monostate{}}});
      }
      csv.close();
      wmin_csv.close();
      break;
    }

    case ExperimentKind::Graph: {
      PlanarGraph graph;
      if (!config.graph_file.empty()) {
        graph = read_graph(config.graph_file);
      } else {
        graph = make_random_planar_graph(value_or(config.graph_nodes, 50),
                                         config.seed);
      }
      const int side = value_or(config.grid_side, 2000);
      const int cw = value_or(config.channel_width, 10);
      const ConductiveMask mask = rasterize_graph(graph, side, cw);
      write_graph(graph, (out / "graph.txt").string());
      write_mask(mask, (out / "mask.exmask").string());
      CsvWriter csv((out / "graph.csv").string(),
                    {"c2", "zeta_edges", "zeta_nodes"});
      for (double c2 : c2s) {
        GridState state(mask.width(), mask.height());
        stimulate(state, mask, mask.meta->stim_site);
        RunSetup setup{&mask, params_for(c2), max_steps, -1};
        RunRecord rec = run_one(setup, state, config, "c2_" + fixed6(c2));
        GraphRow row;
        row.c2 = c2;
        row.zeta_edges = edge_traversal_ratio(rec, *mask.meta).zeta;
        row.zeta_nodes = coverage(rec.visited, mask).zeta;
        summary.graph_rows.push_back(row);
        csv.row({c2, row.zeta_edges, row.zeta_nodes});
      }
      csv.close();
      break;
    }
  }

  return summary;
}

}  // namespace exgrid
