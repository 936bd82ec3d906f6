#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "exgrid/grid_state.hpp"
#include "exgrid/mask.hpp"
#include "exgrid/model.hpp"
#include "exgrid/params.hpp"

namespace exgrid {

// Excitation predicate everywhere: u strictly greater than theta.
inline constexpr double kExcitationThreshold = 0.04;

// Conducive nodes with u > theta.
std::int64_t excited_count(const GridState& state, const ConductiveMask& mask,
                           double theta = kExcitationThreshold);

struct CoverageResult {
  double zeta = 0.0;  // in [0, 1]
  double c2 = 0.0;    // excitability of the run, filled by the caller
};

// Fraction of conducive nodes visited at least once. Throws
// std::invalid_argument for an empty mask or shape mismatch.
CoverageResult coverage(const Field2D<std::uint8_t>& visited,
                        const ConductiveMask& mask);

// Max x over conducive nodes with u > theta; nullopt when none.
std::optional<int> front_position(const GridState& state, const ConductiveMask& mask,
                                  double theta = kExcitationThreshold);

// Least-squares slope of front position vs generation over samples past the
// transient, scaled by dx/dt into grid-length per time unit. nullopt when
// fewer than two samples (or fewer than two distinct generations) remain: no
// propagation to measure.
std::optional<double> measure_speed(
    const std::vector<std::pair<std::int64_t, int>>& front_series,
    const FhnParams& params, std::int64_t transient = 2000);

struct Profile {
  std::vector<double> u;
  std::vector<double> v;
};

// u and v along a grid row.
Profile profile(const GridState& state, const ConductiveMask& mask, int row);
double amplitude(const Profile& profile);  // max u

// Full width of the u > theta region of a profile, in nodes; 0 when nothing
// exceeds theta.
int profile_width(const Profile& profile, double theta = kExcitationThreshold);

struct AngleResult {
  std::optional<double> alpha_max;  // largest entered branch angle, degrees
  std::vector<std::pair<double, bool>> entered;  // (angle, entered) per branch
};

// A branch counts as entered iff its far-end probe node was visited.
// Requires an angles template.
AngleResult branch_entry(const RunRecord& record, const TemplateMeta& meta);

// True iff any probe node past the channel mouth of the far reservoir was
// visited. Requires an expansion template.
bool expansion_entry(const RunRecord& record, const TemplateMeta& meta);

// An edge counts as traversed iff at least `fraction` of its centerline
// nodes were visited. Requires a graph template.
CoverageResult edge_traversal_ratio(const RunRecord& record, const TemplateMeta& meta,
                                    double fraction = 0.9);

// Smallest width whose run entered the expansion, across (width, entered)
// sweep rows; nullopt when none entered.
std::optional<int> min_entry_width(const std::vector<std::pair<int, bool>>& rows);

}  // namespace exgrid
