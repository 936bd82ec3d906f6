#include "exgrid/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exgrid {

ExperimentKind parse_experiment(const std::string& name) {
  if (name == "free") return ExperimentKind::Free;
  if (name == "speed") return ExperimentKind::Speed;
  if (name == "profile") return ExperimentKind::Profile;
  if (name == "angles") return ExperimentKind::Angles;
  if (name == "expansion") return ExperimentKind::Expansion;
  if (name == "graph") return ExperimentKind::Graph;
  throw std::invalid_argument("unknown experiment: " + name);
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Free: return "free";
    case ExperimentKind::Speed: return "speed";
    case ExperimentKind::Profile: return "profile";
    case ExperimentKind::Angles: return "angles";
    case ExperimentKind::Expansion: return "expansion";
    case ExperimentKind::Graph: return "graph";
  }
  return "unknown";
}

std::vector<double> SweepRange::values() const {
  if (!(step > 0.0) || stop < start) {
    throw std::invalid_argument("sweep range must have step > 0 and stop >= start");
  }
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = start + i * step;
    if (v > stop + step / 2.0) break;
    out.push_back(v);
  }
  return out;
}

std::vector<double> ExperimentConfig::c2_values() const {
  if (c2_range) return c2_range->values();
  if (c2) return {*c2};
  return {0.1};
}

std::int64_t ExperimentConfig::effective_steps() const {
  if (steps >= 0) return steps;
  switch (experiment) {
    case ExperimentKind::Expansion:
      return 100000;
    case ExperimentKind::Graph:
      return 1000000;
    default:
      return 200000;
  }
}

void ExperimentConfig::validate() const {
  if (c2_range) c2_range->values();  // throws when malformed
  if (steps < -1) throw std::invalid_argument("steps must be >= 0");
  if (snapshot_every < 0) throw std::invalid_argument("snapshot_every must be >= 0");
  if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
  if (out_dir.empty()) throw std::invalid_argument("output directory must be set");
  for (double v : c2_values()) {
    if (!std::isfinite(v)) throw std::invalid_argument("c2 must be finite");
  }
}

namespace {

std::int64_t parse_i64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer for " + key + ": '" + s + "'");
  }
}

double parse_f64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number for " + key + ": '" + s + "'");
  }
}

}  // namespace

void apply_config_pair(ExperimentConfig& config, const std::string& key,
                       const std::string& value) {
  if (key == "experiment") {
    config.experiment = parse_experiment(value);
  } else if (key == "c2") {
    config.c2 = parse_f64(value, key);
    config.c2_range.reset();
  } else if (key == "c2_range") {
    std::istringstream iss(value);
    SweepRange r;
    if (!(iss >> r.start >> r.stop >> r.step)) {
      throw std::invalid_argument("c2_range needs 'start stop step'");
    }
    std::string rest;
    if (iss >> rest) throw std::invalid_argument("c2_range needs exactly 3 numbers");
    config.c2_range = r;
    config.c2.reset();
  } else if (key == "steps") {
    config.steps = parse_i64(value, key);
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_i64(value, key));
  } else if (key == "snapshot_every") {
    config.snapshot_every = parse_i64(value, key);
  } else if (key == "sample_every") {
    config.sample_every = parse_i64(value, key);
  } else if (key == "out") {
    config.out_dir = value;
  } else if (key == "threads") {
    config.threads = static_cast<int>(parse_i64(value, key));
  } else if (key == "theta") {
    config.theta = parse_f64(value, key);
  } else if (key == "grid_width") {
    config.grid_width = static_cast<int>(parse_i64(value, key));
  } else if (key == "grid_height") {
    config.grid_height = static_cast<int>(parse_i64(value, key));
  } else if (key == "channel_length") {
    config.channel_length = static_cast<int>(parse_i64(value, key));
  } else if (key == "channel_width") {
    config.channel_width = static_cast<int>(parse_i64(value, key));
  } else if (key == "width_min") {
    config.width_min = static_cast<int>(parse_i64(value, key));
  } else if (key == "width_max") {
    config.width_max = static_cast<int>(parse_i64(value, key));
  } else if (key == "grid_side") {
    config.grid_side = static_cast<int>(parse_i64(value, key));
  } else if (key == "graph_nodes") {
    config.graph_nodes = static_cast<int>(parse_i64(value, key));
  } else if (key == "graph_file") {
    config.graph_file = value;
  } else if (key == "seed_length") {
    config.seed_length = static_cast<int>(parse_i64(value, key));
  } else if (key == "stim_radius") {
    config.stim_radius = parse_f64(value, key);
  } else if (key == "stim_mode") {
    if (value == "fragment") {
      config.stim_mode = ExperimentConfig::StimMode::Fragment;
    } else if (value == "point") {
      config.stim_mode = ExperimentConfig::StimMode::Point;
    } else {
      throw std::invalid_argument("stim_mode must be 'fragment' or 'point'");
    }
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  ExperimentConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
    line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
    value.erase(value.begin(), std::find_if(value.begin(), value.end(), notspace));
    try {
      apply_config_pair(config, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return config;
}

}  // namespace exgrid
