#include "exgrid/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exgrid {

std::int64_t excited_count(const GridState& state, const ConductiveMask& mask,
                           double theta) {
  if (state.width() != mask.width() || state.height() != mask.height()) {
    throw std::invalid_argument("excited_count: dimension mismatch");
  }
  std::int64_t n = 0;
  for (int y = 0; y < state.height(); ++y) {
    for (int x = 0; x < state.width(); ++x) {
      n += mask.at(x, y) && state.u.at(x, y) > theta;
    }
  }
  return n;
}

CoverageResult coverage(const Field2D<std::uint8_t>& visited,
                        const ConductiveMask& mask) {
  if (visited.width() != mask.width() || visited.height() != mask.height()) {
    throw std::invalid_argument("coverage: dimension mismatch");
  }
  std::int64_t total = 0, hit = 0;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      ++total;
      hit += visited.at(x, y) != 0;
    }
  }
  if (total == 0) throw std::invalid_argument("coverage: mask has no conducive nodes");
  return CoverageResult{static_cast<double>(hit) / static_cast<double>(total), 0.0};
}

std::optional<int> front_position(const GridState& state, const ConductiveMask& mask,
                                  double theta) {
  if (state.width() != mask.width() || state.height() != mask.height()) {
    throw std::invalid_argument("front_position: dimension mismatch");
  }
  int best = -1;
  for (int y = 0; y < state.height(); ++y) {
    for (int x = state.width() - 1; x > best; --x) {
      if (mask.at(x, y) && state.u.at(x, y) > theta) {
        best = x;
        break;
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

std::optional<double> measure_speed(
    const std::vector<std::pair<std::int64_t, int>>& front_series,
    const FhnParams& params, std::int64_t transient) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::int64_t n = 0;
  std::int64_t first_gen = -1, last_gen = -1;
  for (const auto& [gen, x] : front_series) {
    if (gen < transient) continue;
    if (first_gen < 0) first_gen = gen;
    last_gen = gen;
    const double g = static_cast<double>(gen);
    const double f = static_cast<double>(x);
    sx += g;
    sy += f;
    sxx += g * g;
    sxy += g * f;
    ++n;
  }
  if (n < 2 || first_gen == last_gen) return std::nullopt;
  const double dn = static_cast<double>(n);
  const double denom = sxx - sx * sx / dn;
  if (denom == 0.0) return std::nullopt;
  const double slope = (sxy - sx * sy / dn) / denom;  // nodes per generation
  return slope * params.dx / params.dt;
}

Profile profile(const GridState& state, const ConductiveMask& mask, int row) {
  if (state.width() != mask.width() || state.height() != mask.height()) {
    throw std::invalid_argument("profile: dimension mismatch");
  }
  if (row < 0 || row >= state.height()) {
    throw std::invalid_argument("profile: row outside grid");
  }
  Profile p;
  p.u.resize(state.width());
  p.v.resize(state.width());
  for (int x = 0; x < state.width(); ++x) {
    p.u[x] = state.u.at(x, row);
    p.v[x] = state.v.at(x, row);
  }
  return p;
}

double amplitude(const Profile& profile) {
  double best = 0.0;
  for (double u : profile.u) best = std::max(best, u);
  return best;
}

int profile_width(const Profile& profile, double theta) {
  int first = -1, last = -1;
  for (int x = 0; x < static_cast<int>(profile.u.size()); ++x) {
    if (profile.u[x] > theta) {
      if (first < 0) first = x;
      last = x;
    }
  }
  return first < 0 ? 0 : last - first + 1;
}

AngleResult branch_entry(const RunRecord& record, const TemplateMeta& meta) {
  if (meta.kind != TemplateKind::Angles) {
    throw std::invalid_argument("branch_entry: not an angles template");
  }
  AngleResult result;
  for (const BranchMeta& br : meta.branches) {
    const bool hit = record.visited.at(br.probe.x, br.probe.y) != 0;
    result.entered.emplace_back(br.angle_deg, hit);
    if (hit && (!result.alpha_max || br.angle_deg > *result.alpha_max)) {
      result.alpha_max = br.angle_deg;
    }
  }
  return result;
}

bool expansion_entry(const RunRecord& record, const TemplateMeta& meta) {
  if (meta.kind != TemplateKind::Expansion) {
    throw std::invalid_argument("expansion_entry: not an expansion template");
  }
  for (const Coord& c : meta.probe_region) {
    if (record.visited.at(c.x, c.y) != 0) return true;
  }
  return false;
}

CoverageResult edge_traversal_ratio(const RunRecord& record, const TemplateMeta& meta,
                                    double fraction) {
  if (meta.kind != TemplateKind::Graph) {
    throw std::invalid_argument("edge_traversal_ratio: not a graph template");
  }
  if (meta.edge_paths.empty()) {
    throw std::invalid_argument("edge_traversal_ratio: template has no edges");
  }
  std::int64_t traversed = 0;
  for (const auto& path : meta.edge_paths) {
    if (path.empty()) continue;
    std::int64_t hit = 0;
    for (const Coord& c : path) hit += record.visited.at(c.x, c.y) != 0;
    if (static_cast<double>(hit) >=
        fraction * static_cast<double>(path.size())) {
      ++traversed;
    }
  }
  return CoverageResult{
      static_cast<double>(traversed) / static_cast<double>(meta.edge_paths.size()),
      0.0};
}

std::optional<int> min_entry_width(const std::vector<std::pair<int, bool>>& rows) {
  std::optional<int> best;
  for (const auto& [width, entered] : rows) {
    if (entered && (!best || width < *best)) best = width;
  }
  return best;
}

}  // namespace exgrid
