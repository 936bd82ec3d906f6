#include <doctest.h>

#include <cmath>

#include "exgrid/measures.hpp"
#include "exgrid/model.hpp"
#include "exgrid/rng.hpp"
#include "exgrid/templates.hpp"

using namespace exgrid;

TEST_CASE("excited_count uses a strict threshold") {
  ConductiveMask mask(10, 10, true);
  GridState state(10, 10);
  CHECK(excited_count(state, mask) == 0);
  state.u.fill(1.0);
  CHECK(excited_count(state, mask) == 100);
  state.u.fill(0.04);
  CHECK(excited_count(state, mask) == 0);  // boundary value is not excited
  state.u.fill(0.0400000001);
  CHECK(excited_count(state, mask) == 100);
}

TEST_CASE("excited_count ignores non-conducive nodes") {
  ConductiveMask mask(10, 10, true);
  mask.set(3, 3, false);
  GridState state(10, 10);
  state.u.fill(1.0);
  CHECK(excited_count(state, mask) == 99);
}

TEST_CASE("coverage ratios") {
  ConductiveMask mask(10, 10, true);
  Field2D<std::uint8_t> visited(10, 10);
  CHECK(coverage(visited, mask).zeta == 0.0);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 5; ++x) visited.at(x, y) = 1;
  }
  CHECK(coverage(visited, mask).zeta == 0.5);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) visited.at(x, y) = 1;
  }
  CHECK(coverage(visited, mask).zeta == 1.0);

  ConductiveMask empty(10, 10);
  CHECK_THROWS_AS(coverage(visited, empty), std::invalid_argument);
}

TEST_CASE("front_position takes the rightmost excited conducive node") {
  ConductiveMask mask(30, 8, true);
  GridState state(30, 8);
  CHECK(!front_position(state, mask).has_value());
  for (int y = 0; y < 8; ++y) state.u.at(10, y) = 1.0;
  CHECK(front_position(state, mask) == 10);
  state.u.at(17, 3) = 0.5;  // second, further front
  CHECK(front_position(state, mask) == 17);
  mask.set(17, 3, false);
  CHECK(front_position(state, mask) == 10);
}

TEST_CASE("measure_speed recovers synthetic slopes") {
  FhnParams params;  // dx = 2, dt = 0.015
  SUBCASE("one node per ten generations") {
    std::vector<std::pair<std::int64_t, int>> series;
    for (int i = 0; i < 400; ++i) series.emplace_back(2000 + 10 * i, 100 + i);
    const auto v = measure_speed(series, params);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(2.0 / (10.0 * 0.015)).epsilon(1e-12));
  }
  SUBCASE("stationary front") {
    std::vector<std::pair<std::int64_t, int>> series;
    for (int i = 0; i < 100; ++i) series.emplace_back(3000 + 7 * i, 42);
    CHECK(measure_speed(series, params) == 0.0);
  }
  SUBCASE("nothing after the transient means no propagation") {
    std::vector<std::pair<std::int64_t, int>> series{{100, 5}, {200, 6}};
    CHECK(!measure_speed(series, params).has_value());
    CHECK(!measure_speed({}, params).has_value());
  }
  SUBCASE("random slopes recovered to 1e-12 relative") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const double slope = 0.001 + 0.2 * rng.next_double();
      std::vector<std::pair<std::int64_t, int>> series;
      for (int i = 0; i < 300; ++i) {
        const std::int64_t gen = 2000 + 25 * i;
        series.emplace_back(gen, static_cast<int>(std::lround(10 + slope * gen)));
      }
      // Rounded positions: fit recovers the slope to rounding accuracy.
      const auto v = measure_speed(series, params);
      REQUIRE(v.has_value());
      CHECK(*v == doctest::Approx(slope * params.dx / params.dt).epsilon(2e-3));
    }
  }
  SUBCASE("exact linear positions recovered to 1e-12 relative") {
    std::vector<std::pair<std::int64_t, int>> series;
    for (int i = 0; i < 256; ++i) series.emplace_back(2000 + 8 * i, 50 + 3 * i);
    const auto v = measure_speed(series, params);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx((3.0 / 8.0) * params.dx / params.dt).epsilon(1e-12));
  }
}

TEST_CASE("profile and amplitude") {
  ConductiveMask mask = make_channel(40, 10);
  GridState state(mask.width(), mask.height());
  CHECK(amplitude(profile(state, mask, 7)) == 0.0);
  stimulate(state, mask, mask.meta->stim_site, 5.0, 1.0);
  const Profile p = profile(state, mask, mask.meta->stim_site.y);
  CHECK(amplitude(p) == 1.0);
  CHECK(profile_width(p) > 0);
  CHECK_THROWS_AS(profile(state, mask, -1), std::invalid_argument);
  CHECK_THROWS_AS(profile(state, mask, mask.height()), std::invalid_argument);
}

TEST_CASE("branch_entry reads far-end probes") {
  ConductiveMask mask = make_angles_template();
  const TemplateMeta& meta = *mask.meta;

  RunRecord rec;
  rec.visited = Field2D<std::uint8_t>(mask.width(), mask.height());
  SUBCASE("nothing visited, nothing entered") {
    const AngleResult r = branch_entry(rec, meta);
    CHECK(!r.alpha_max.has_value());
    for (const auto& [angle, entered] : r.entered) CHECK(!entered);
  }
  SUBCASE("marking two probes") {
    rec.visited.at(meta.branches[3].probe.x, meta.branches[3].probe.y) = 1;
    rec.visited.at(meta.branches[7].probe.x, meta.branches[7].probe.y) = 1;
    const AngleResult r = branch_entry(rec, meta);
    REQUIRE(r.alpha_max.has_value());
    CHECK(*r.alpha_max == meta.branches[7].angle_deg);
    CHECK(r.entered[3].second);
    CHECK(r.entered[7].second);
    CHECK(!r.entered[8].second);
  }
  SUBCASE("wrong template kind") {
    TemplateMeta wrong = meta;
    wrong.kind = TemplateKind::Channel;
    CHECK_THROWS_AS(branch_entry(rec, wrong), std::invalid_argument);
  }
}

TEST_CASE("expansion_entry requires a probe hit") {
  ConductiveMask mask = make_expansion_template(10);
  const TemplateMeta& meta = *mask.meta;
  RunRecord rec;
  rec.visited = Field2D<std::uint8_t>(mask.width(), mask.height());
  CHECK(!expansion_entry(rec, meta));
  rec.visited.at(meta.probe_region[40].x, meta.probe_region[40].y) = 1;
  CHECK(expansion_entry(rec, meta));
  TemplateMeta wrong = meta;
  wrong.kind = TemplateKind::Graph;
  CHECK_THROWS_AS(expansion_entry(rec, wrong), std::invalid_argument);
}

TEST_CASE("edge_traversal_ratio counts nearly-complete centerlines") {
  TemplateMeta meta;
  meta.kind = TemplateKind::Graph;
  meta.edge_paths = {{}, {}};
  for (int i = 0; i < 10; ++i) meta.edge_paths[0].push_back({i, 0});
  for (int i = 0; i < 10; ++i) meta.edge_paths[1].push_back({i, 2});
  RunRecord rec;
  rec.visited = Field2D<std::uint8_t>(16, 4);

  SUBCASE("none visited") {
    CHECK(edge_traversal_ratio(rec, meta).zeta == 0.0);
  }
  SUBCASE("all visited") {
    for (const auto& path : meta.edge_paths) {
      for (const Coord& c : path) rec.visited.at(c.x, c.y) = 1;
    }
    CHECK(edge_traversal_ratio(rec, meta).zeta == 1.0);
  }
  SUBCASE("fraction boundary is inclusive") {
    for (int i = 0; i < 9; ++i) rec.visited.at(i, 0) = 1;  // 9 of 10
    CHECK(edge_traversal_ratio(rec, meta, 0.9).zeta == 0.5);
    rec.visited.at(8, 0) = 0;  // 8 of 10
    CHECK(edge_traversal_ratio(rec, meta, 0.9).zeta == 0.0);
  }
  SUBCASE("wrong kind") {
    meta.kind = TemplateKind::Expansion;
    CHECK_THROWS_AS(edge_traversal_ratio(rec, meta), std::invalid_argument);
  }
}

TEST_CASE("coverage grows monotonically with run length") {
  ConductiveMask mask = make_channel(120, 10);
  FhnParams params;
  params.c2 = 0.1;
  double prev = -1.0;
  for (std::int64_t steps : {2000, 6000, 12000}) {
    GridState state(mask.width(), mask.height());
    stimulate(state, mask, mask.meta->stim_site);
    RunOptions opts;
    opts.max_steps = steps;
    const RunRecord rec = run(state, mask, params, opts);
    const double zeta = coverage(rec.visited, mask).zeta;
    CHECK(zeta >= prev);
    prev = zeta;
  }
  CHECK(prev > 0.0);
}

TEST_CASE("min_entry_width picks the smallest entering width") {
  CHECK(!min_entry_width({{6, false}, {7, false}}).has_value());
  CHECK(min_entry_width({{6, false}, {7, true}, {9, true}}) == 7);
  CHECK(min_entry_width({{9, true}, {7, true}, {6, false}}) == 7);
}
