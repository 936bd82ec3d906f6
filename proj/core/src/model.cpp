#include "exgrid/model.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>

namespace exgrid {

namespace {

void check_dims(int gw, int gh, const ConductiveMask& mask) {
  if (gw != mask.width() || gh != mask.height()) {
    throw std::invalid_argument("state and mask dimensions differ: " +
                                std::to_string(gw) + "x" + std::to_string(gh) +
                                " vs " + std::to_string(mask.width()) + "x" +
                                std::to_string(mask.height()));
  }
}

// Maximal horizontal run of conducive cells. Runs in the same row never
// interact (they are separated by at least one impermeable cell), so spans
// only list vertical neighbours.
struct Span {
  int y = 0;
  int x0 = 0;  // inclusive
  int x1 = 0;  // exclusive
  std::int32_t nb_begin = 0;
  std::int32_t nb_end = 0;
};

struct SpanResult {
  std::int32_t excited = 0;
  std::int32_t front = -1;
  std::uint8_t any = 0;    // nonzero u or v written
  std::uint8_t any_u = 0;  // nonzero u written
  std::uint8_t nonfinite = 0;
};

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("EXGRID_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<int>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct Stepper::Impl {
  int width = 0;
  int height = 0;
  int stride = 0;
  FhnParams params;
  double flush_eps;
  double theta = 0.04;
  int nthreads = 1;

  Field2D<std::uint8_t> mask_cells;
  std::vector<Span> spans;
  std::vector<std::int32_t> neighbors;  // flattened vertical adjacency

  Field2D<double> out_u, out_v;
  Field2D<std::uint8_t> visited;

  std::vector<SpanResult> results;     // per span, written by the owning worker
  std::vector<std::uint8_t> live;      // last output of the span had a nonzero cell
  std::vector<std::int64_t> stamp;     // epoch marks for next_active dedupe
  std::int64_t epoch = 0;
  std::vector<std::int32_t> active;    // spans to process this step
  std::vector<std::int32_t> next_active;
  bool skip_enabled = true;            // exact only when I == 0

  StepStats stats;
  bool bound = false;

  // Worker pool, built only for nthreads > 1. Workers rendezvous at `gate`
  // twice per step (start and finish) and pull span chunks off `cursor`.
  std::vector<std::jthread> workers;
  std::unique_ptr<std::barrier<>> gate;
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> shutdown{false};
  const double* in_u = nullptr;
  const double* in_v = nullptr;

  Impl(const ConductiveMask& mask, const FhnParams& p, int threads, double flush)
      : width(mask.width()),
        height(mask.height()),
        stride(mask.cells.stride()),
        params(p),
        flush_eps(flush),
        nthreads(resolve_threads(threads)),
        mask_cells(mask.cells),
        out_u(width, height),
        out_v(width, height),
        visited(width, height) {
    params.validate();
    skip_enabled = (params.I == 0.0);
    build_spans();
    results.resize(spans.size());
    live.assign(spans.size(), 0);
    stamp.assign(spans.size(), -1);
    if (nthreads > 1) start_pool();
  }

  ~Impl() {
    if (!workers.empty()) {
      shutdown.store(true, std::memory_order_relaxed);
      gate->arrive_and_wait();  // release workers into the shutdown check
    }
  }

  // Long conducive runs are chopped into chunks so the active set has
  // sub-row granularity; adjacent chunks in a row are neighbours like
  // vertically overlapping ones.
  static constexpr int kMaxSpanWidth = 64;

  void build_spans() {
    std::vector<std::int32_t> row_begin(height + 1, 0);
    for (int y = 0; y < height; ++y) {
      row_begin[y] = static_cast<std::int32_t>(spans.size());
      int x = 0;
      while (x < width) {
        if (!mask_cells.at(x, y)) {
          ++x;
          continue;
        }
        int x0 = x;
        while (x < width && mask_cells.at(x, y)) ++x;
        for (int c = x0; c < x; c += kMaxSpanWidth) {
          spans.push_back(Span{y, c, std::min(c + kMaxSpanWidth, x), 0, 0});
        }
      }
    }
    row_begin[height] = static_cast<std::int32_t>(spans.size());

    // Vertical coupling is exactly column overlap (diagonals never couple in
    // a 5-point stencil); horizontal coupling links row-adjacent chunks.
    auto overlaps = [](const Span& a, const Span& b) {
      return std::max(a.x0, b.x0) < std::min(a.x1, b.x1);
    };
    for (std::size_t id = 0; id < spans.size(); ++id) {
      Span& s = spans[id];
      s.nb_begin = static_cast<std::int32_t>(neighbors.size());
      for (int dy : {-1, 1}) {
        int ny = s.y + dy;
        if (ny < 0 || ny >= height) continue;
        for (std::int32_t nb = row_begin[ny]; nb < row_begin[ny + 1]; ++nb) {
          if (overlaps(s, spans[nb])) neighbors.push_back(nb);
        }
      }
      if (id > 0 && spans[id - 1].y == s.y && spans[id - 1].x1 == s.x0) {
        neighbors.push_back(static_cast<std::int32_t>(id - 1));
      }
      if (id + 1 < spans.size() && spans[id + 1].y == s.y &&
          spans[id + 1].x0 == s.x1) {
        neighbors.push_back(static_cast<std::int32_t>(id + 1));
      }
      s.nb_end = static_cast<std::int32_t>(neighbors.size());
    }
  }

  void start_pool() {
    gate = std::make_unique<std::barrier<>>(nthreads);
    for (int t = 0; t < nthreads - 1; ++t) {
      workers.emplace_back([this] {
        while (true) {
          gate->arrive_and_wait();
          if (shutdown.load(std::memory_order_relaxed)) return;
          drain();
          gate->arrive_and_wait();
        }
      });
    }
  }

  void push_next(std::int32_t id) {
    if (stamp[id] != epoch) {
      stamp[id] = epoch;
      next_active.push_back(id);
    }
  }

  void process_span(std::int32_t id, const double* u, const double* v) {
    const Span& s = spans[id];
    const double a = params.a, b = params.b, c1 = params.c1, c2 = params.c2;
    const double I = params.I, dt = params.dt;
    // Diffusion couples neighbouring nodes at unit node spacing: the
    // conductance multiplies the plain neighbour-difference sum. Measured
    // front geometry (arrest widths, branch-entry angles) pins this scaling;
    // dx only converts node speeds into grid-length per time unit.
    const double k = params.Du;
    const double eps = flush_eps;
    const double th = theta;
    const std::ptrdiff_t st = stride;

    double* ou = out_u.raw();
    double* ov = out_v.raw();
    std::uint8_t* vis = visited.raw();
    const std::uint8_t* m = mask_cells.raw();

    std::int32_t count = 0;
    std::int32_t front = -1;
    std::uint8_t any = 0, any_u = 0, bad = 0;

    const std::size_t base = static_cast<std::size_t>(s.y + 1) * st + 1;
    for (int x = s.x0; x < s.x1; ++x) {
      const std::size_t i = base + x;
      const double uc = u[i];
      const double vc = v[i];
      const double mN = m[i - st], mS = m[i + st];
      const double mW = m[i - 1], mE = m[i + 1];
      // Grouped so horizontal and vertical mirror images commute bitwise.
      const double lap = (mN * (u[i - st] - uc) + mS * (u[i + st] - uc)) +
                         (mW * (u[i - 1] - uc) + mE * (u[i + 1] - uc));
      double un = uc + dt * (c1 * uc * (uc - a) * (1.0 - uc) - c2 * uc * vc + I +
                             k * lap);
      double vn = vc + dt * (b * (uc - vc));
      un = (std::fabs(un) < eps) ? 0.0 : un;
      vn = (std::fabs(vn) < eps) ? 0.0 : vn;
      ou[i] = un;
      ov[i] = vn;
      const bool exc = un > th;
      count += exc;
      if (exc) front = x;
      vis[i] = static_cast<std::uint8_t>(vis[i] | exc);
      any_u |= (un != 0.0);
      any |= (un != 0.0) | (vn != 0.0);
      bad |= ((un - un) != 0.0) | ((vn - vn) != 0.0);
    }
    results[id] = SpanResult{count, front, any, any_u, bad};
  }

  void drain() {
    constexpr std::size_t kChunk = 4;
    const std::size_t n = active.size();
    while (true) {
      std::size_t begin = cursor.fetch_add(kChunk, std::memory_order_relaxed);
      if (begin >= n) break;
      std::size_t end = std::min(begin + kChunk, n);
      for (std::size_t j = begin; j < end; ++j) process_span(active[j], in_u, in_v);
    }
  }

  void zero_span(Field2D<double>& f, const Span& s) {
    double* p = f.raw() + static_cast<std::size_t>(s.y + 1) * stride + 1 + s.x0;
    std::memset(p, 0, sizeof(double) * static_cast<std::size_t>(s.x1 - s.x0));
  }

  // Scan a state and rebuild the active set; zero the scratch buffers so
  // skipped spans are all-zero in both buffers.
  void rebind_impl(const GridState& state) {
    if (state.width() != width || state.height() != height) {
      throw std::invalid_argument("Stepper::rebind: state dimensions differ from mask");
    }
    std::fill(out_u.raw(), out_u.raw() + out_u.raw_size(), 0.0);
    std::fill(out_v.raw(), out_v.raw() + out_v.raw_size(), 0.0);
    epoch++;
    next_active.clear();
    std::int64_t excited = 0;
    int front = -1;
    const double* u = state.u.raw();
    const double* v = state.v.raw();
    std::uint8_t* vis = visited.raw();
    for (std::size_t id = 0; id < spans.size(); ++id) {
      const Span& s = spans[id];
      const std::size_t base = static_cast<std::size_t>(s.y + 1) * stride + 1;
      bool any = false;
      for (int x = s.x0; x < s.x1; ++x) {
        const std::size_t i = base + x;
        const bool exc = u[i] > theta;
        excited += exc;
        if (exc && x > front) front = x;
        vis[i] = static_cast<std::uint8_t>(vis[i] | exc);
        any = any || (u[i] != 0.0) || (v[i] != 0.0);
      }
      live[id] = any;
      if (any || !skip_enabled) push_next(id);
      // Spans with stale nonzero cells anywhere need their neighbours awake
      // too; conservative but only paid at rebind.
      if (any) {
        for (std::int32_t nbi = s.nb_begin; nbi < s.nb_end; ++nbi) {
          push_next(neighbors[nbi]);
        }
      }
    }
    active.swap(next_active);
    std::sort(active.begin(), active.end());
    stats = StepStats{excited, front};
    bound = true;
  }

  void advance(GridState& state) {
    if (!bound) rebind_impl(state);
    if (state.width() != width || state.height() != height) {
      throw std::invalid_argument("Stepper::advance: state dimensions differ from mask");
    }

    in_u = state.u.raw();
    in_v = state.v.raw();
    cursor.store(0, std::memory_order_relaxed);

    if (workers.empty()) {
      for (std::size_t j = 0; j < active.size(); ++j) {
        process_span(active[j], in_u, in_v);
      }
    } else {
      gate->arrive_and_wait();
      drain();
      gate->arrive_and_wait();
    }

    // Serial phase: reduce, rebuild the active set, publish the new buffers.
    std::int64_t excited = 0;
    int front = -1;
    std::uint8_t bad = 0;
    epoch++;
    next_active.clear();
    for (std::int32_t id : active) {
      const SpanResult& r = results[id];
      excited += r.excited;
      front = std::max(front, r.front);
      bad |= r.nonfinite;
    }

    std::swap(state.u, out_u);
    std::swap(state.v, out_v);
    state.generation++;

    for (std::int32_t id : active) {
      const SpanResult& r = results[id];
      if (r.any) {
        push_next(id);
      } else if (live[id]) {
        // Span just died: its previous values still sit in the scratch
        // buffers; zero them so a skipped span is all-zero in both buffers.
        zero_span(out_u, spans[id]);
        zero_span(out_v, spans[id]);
      }
      live[id] = r.any;
      if (r.any_u) {
        const Span& s = spans[id];
        for (std::int32_t nbi = s.nb_begin; nbi < s.nb_end; ++nbi) {
          push_next(neighbors[nbi]);
        }
      }
    }
    if (!skip_enabled) {
      next_active.clear();
      for (std::size_t id = 0; id < spans.size(); ++id) {
        next_active.push_back(static_cast<std::int32_t>(id));
      }
    }
    active.swap(next_active);
    std::sort(active.begin(), active.end());

    stats = StepStats{excited, front};
    if (bad) {
      throw SimulationDiverged(state.generation,
                               "non-finite value at generation " +
                                   std::to_string(state.generation));
    }
  }
};

Stepper::Stepper(const ConductiveMask& mask, const FhnParams& params, int threads,
                 double flush_epsilon)
    : impl_(std::make_unique<Impl>(mask, params, threads, flush_epsilon)) {}

Stepper::~Stepper() = default;

void Stepper::advance(GridState& state) { impl_->advance(state); }

void Stepper::rebind(const GridState& state) { impl_->rebind_impl(state); }

const StepStats& Stepper::stats() const { return impl_->stats; }

const Field2D<std::uint8_t>& Stepper::visited() const { return impl_->visited; }

double Stepper::theta() const { return impl_->theta; }

void Stepper::set_theta(double theta) { impl_->theta = theta; }

int Stepper::threads() const { return impl_->nthreads; }

Field2D<double> laplacian5(const Field2D<double>& u, const ConductiveMask& mask,
                           double dx) {
  if (u.width() != mask.width() || u.height() != mask.height()) {
    throw std::invalid_argument("laplacian5: field and mask dimensions differ");
  }
  if (!(dx > 0.0)) throw std::invalid_argument("laplacian5: dx must be > 0");
  const double inv = 1.0 / (dx * dx);
  Field2D<double> out(u.width(), u.height());
  for (int y = 0; y < u.height(); ++y) {
    for (int x = 0; x < u.width(); ++x) {
      if (!mask.at(x, y)) continue;
      const double uc = u.at(x, y);
      double sum = 0.0;
      if (y > 0 && mask.at(x, y - 1)) sum += u.at(x, y - 1) - uc;
      if (y + 1 < u.height() && mask.at(x, y + 1)) sum += u.at(x, y + 1) - uc;
      if (x > 0 && mask.at(x - 1, y)) sum += u.at(x - 1, y) - uc;
      if (x + 1 < u.width() && mask.at(x + 1, y)) sum += u.at(x + 1, y) - uc;
      out.at(x, y) = sum * inv;
    }
  }
  return out;
}

void step(GridState& state, const ConductiveMask& mask, const FhnParams& params) {
  check_dims(state.width(), state.height(), mask);
  Stepper stepper(mask, params, 1);
  stepper.advance(state);
}

std::int64_t stimulate(GridState& state, const ConductiveMask& mask, Coord center,
                       double radius, double amplitude) {
  check_dims(state.width(), state.height(), mask);
  if (!mask.in_bounds(center.x, center.y)) {
    throw std::invalid_argument("stimulate: center outside grid");
  }
  if (radius < 0.0) throw std::invalid_argument("stimulate: negative radius");
  const double r2 = radius * radius;
  const int x0 = std::max(0, center.x - static_cast<int>(radius));
  const int x1 = std::min(state.width() - 1, center.x + static_cast<int>(radius));
  const int y0 = std::max(0, center.y - static_cast<int>(radius));
  const int y1 = std::min(state.height() - 1, center.y + static_cast<int>(radius));
  std::int64_t written = 0;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double ddx = x - center.x;
      const double ddy = y - center.y;
      if (ddx * ddx + ddy * ddy <= r2 && mask.at(x, y)) {
        state.u.at(x, y) = amplitude;
        ++written;
      }
    }
  }
  return written;
}

RunRecord run(GridState& state, const ConductiveMask& mask, const FhnParams& params,
              const RunOptions& options) {
  if (options.max_steps < 0) {
    throw std::invalid_argument("run: max_steps must be >= 0");
  }
  check_dims(state.width(), state.height(), mask);

  Stepper stepper(mask, params, options.threads, options.flush_epsilon);
  stepper.set_theta(options.theta);
  stepper.rebind(state);

  RunRecord rec;
  rec.initial_excited = stepper.stats().excited;
  if (options.snapshot_every > 0 && options.snapshot_hook) {
    options.snapshot_hook(state);
  }

  std::int64_t quiet = 0;
  std::int64_t first_quiet = -1;
  for (std::int64_t s = 0; s < options.max_steps; ++s) {
    stepper.advance(state);
    const StepStats& st = stepper.stats();
    if (options.sample_every > 0 && state.generation % options.sample_every == 0) {
      rec.excited_series.emplace_back(state.generation, st.excited);
      if (st.front_x >= 0) rec.front_series.emplace_back(state.generation, st.front_x);
    }
    if (options.snapshot_every > 0 && options.snapshot_hook &&
        state.generation % options.snapshot_every == 0) {
      options.snapshot_hook(state);
    }
    if (st.excited == 0) {
      if (quiet == 0) first_quiet = state.generation;
      ++quiet;
      if (options.quiescence_window > 0 && quiet >= options.quiescence_window) {
        rec.stopped_quiescent = true;
        break;
      }
    } else {
      quiet = 0;
      first_quiet = -1;
    }
    if (options.stop_front_x >= 0 && st.front_x >= options.stop_front_x) {
      rec.stopped_front = true;
      break;
    }
  }

  rec.final_generation = state.generation;
  rec.final_excited = stepper.stats().excited;
  rec.extinction_generation = rec.final_excited == 0 ? first_quiet : -1;
  rec.visited = stepper.visited();
  return rec;
}

}  // namespace exgrid
