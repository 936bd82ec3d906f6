#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "exgrid/field2d.hpp"
#include "exgrid/grid_state.hpp"
#include "exgrid/mask.hpp"
#include "exgrid/params.hpp"

namespace exgrid {

// Magnitudes below this are snapped to exact zero when a step writes its
// output buffers. Keeps the resting state an exact fixed point behind decayed
// excitations, which lets the kernel skip provably-at-rest regions. Far below
// any dynamically relevant scale of the model (threshold a = 0.13).
inline constexpr double kDefaultFlushEpsilon = 1e-12;

struct StepStats {
  std::int64_t excited = 0;  // conducive nodes with u > theta
  int front_x = -1;          // max x among them, -1 when none
};

// Thrown when a state stops being finite; carries the first bad generation.
class SimulationDiverged : public std::runtime_error {
 public:
  SimulationDiverged(std::int64_t generation, std::string message)
      : std::runtime_error(std::move(message)), generation_(generation) {}
  std::int64_t generation() const { return generation_; }

 private:
  std::int64_t generation_;
};

// Advances GridStates over a fixed mask. Builds a span decomposition of the
// conducive region once, owns the write buffers and the worker pool.
//
// The update is synchronous: every read targets the pre-step buffer. Results
// are bitwise identical for any thread count; lattice regions that are
// exactly at rest are skipped, which is exact rather than approximate.
class Stepper {
 public:
  Stepper(const ConductiveMask& mask, const FhnParams& params, int threads = 0,
          double flush_epsilon = kDefaultFlushEpsilon);
  ~Stepper();

  Stepper(const Stepper&) = delete;
  Stepper& operator=(const Stepper&) = delete;

  // One synchronous step; state.generation increments. Throws
  // std::invalid_argument on dimension mismatch, SimulationDiverged when a
  // non-finite value appears.
  void advance(GridState& state);

  // Rescan the state for nonzero cells. Required after writing into a state
  // from outside (e.g. stimulate) before further advance() calls.
  void rebind(const GridState& state);

  const StepStats& stats() const;
  // Conducive nodes with u > theta at least once, accumulated over every
  // rebind scan and every step since construction.
  const Field2D<std::uint8_t>& visited() const;

  double theta() const;
  void set_theta(double theta);
  int threads() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Resolves a requested thread count: n > 0 is taken as-is, n == 0 consults
// EXGRID_THREADS, falling back to 1.
int resolve_threads(int requested);

// Five-point Laplacian over conducive nodes, zero-flux at mask boundaries;
// each missing neighbour is mirrored and contributes nothing. Non-conducive
// nodes yield 0. Throws std::invalid_argument on shape mismatch or dx <= 0.
Field2D<double> laplacian5(const Field2D<double>& u, const ConductiveMask& mask,
                           double dx);

// One synchronous integration step (single-threaded convenience; build a
// Stepper for long runs).
void step(GridState& state, const ConductiveMask& mask, const FhnParams& params);

// Sets u = amplitude at every conducive node within Euclidean distance
// `radius` of `center`; v untouched. Returns the number of nodes written.
// Throws std::invalid_argument when center lies outside the grid.
std::int64_t stimulate(GridState& state, const ConductiveMask& mask, Coord center,
                       double radius = 5.0, double amplitude = 1.0);

struct RunOptions {
  std::int64_t max_steps = 0;
  double theta = 0.04;
  // Stop after this many consecutive steps with zero excited nodes; 0 never
  // stops early.
  int quiescence_window = 500;
  std::int64_t sample_every = 1;    // excited/front series stride
  std::int64_t snapshot_every = 0;  // 0 = no snapshots
  std::function<void(const GridState&)> snapshot_hook;
  int stop_front_x = -1;  // stop once the front reaches this column, -1 = never
  int threads = 0;
  double flush_epsilon = kDefaultFlushEpsilon;
};

// Time series and cumulative observations from one simulation.
struct RunRecord {
  std::vector<std::pair<std::int64_t, std::int64_t>> excited_series;
  std::vector<std::pair<std::int64_t, int>> front_series;  // only when a front exists
  Field2D<std::uint8_t> visited;
  std::int64_t initial_excited = 0;
  std::int64_t final_generation = 0;
  std::int64_t final_excited = 0;
  // First generation of the terminal excited == 0 stretch; -1 while alive.
  std::int64_t extinction_generation = -1;
  bool stopped_quiescent = false;
  bool stopped_front = false;
};

// Applies up to max_steps steps with the configured observers. The series
// record generations >= 1; the initial state contributes initial_excited and
// its visited marks. Snapshot hook fires at generation 0 and then at every
// snapshot_every-th generation.
RunRecord run(GridState& state, const ConductiveMask& mask, const FhnParams& params,
              const RunOptions& options);

}  // namespace exgrid
