#include <doctest.h>

#include <cmath>

#include "mutualspace/optimizer.hpp"
#include "mutualspace/placement.hpp"
#include "oracles.hpp"

using namespace mutualspace;
using place::Candidate;
using place::CandidateSets;
using place::PlacementConfig;
using place::UserClassGeometry;

namespace {

UserClassGeometry ring_geometry(const geom::Polygon& table) {
  UserClassGeometry g;
  g.sample_kind = UserClassGeometry::SampleKind::Ring;
  g.ring_source = table;
  g.target_kind = UserClassGeometry::TargetKind::PolyBoundary;
  g.target_poly = table;
  g.stand_region = geom::PolygonSet{geom::make_rect(-20, -20, 20, 20)};
  return g;
}

CandidateSets synthetic_sets(opt::SplitMix64& rng, int n_classes, int max_per_class) {
  CandidateSets sets(n_classes);
  const geom::Point2 target{rng.uniform(0, 2), rng.uniform(0, 2)};
  for (int k = 0; k < n_classes; ++k) {
    const int n = 3 + static_cast<int>(rng.next_below(max_per_class - 2));
    for (int i = 0; i < n; ++i) {
      Candidate c;
      c.position = {rng.uniform(0, 2.0), rng.uniform(0, 2.0)};
      c.owner = k;
      c.target_dist = geom::distance(c.position, target);
      sets[k].push_back(c);
    }
  }
  return sets;
}

}  // namespace

TEST_CASE("sample: ring/line/grid candidate counts") {
  PlacementConfig cfg;  // d_step 0.2, offset 0.45

  // 1x1 table: offset ring length ~6.83 -> 34 samples
  const auto ring = place::sample_class(ring_geometry(geom::make_rect(0, 0, 1, 1)), 0, cfg);
  CHECK(ring.size() == 34);

  // 4 m wall line -> 21 colinear candidates
  UserClassGeometry wall;
  wall.sample_kind = UserClassGeometry::SampleKind::Line;
  wall.line_source = {{0, 0.45}, {4, 0.45}};
  wall.target_kind = UserClassGeometry::TargetKind::Face;
  wall.target_face = {{0, 0}, {4, 0}};
  wall.stand_region = geom::PolygonSet{geom::make_rect(-20, -20, 20, 20)};
  const auto line = place::sample_class(wall, 0, cfg);
  CHECK(line.size() == 21);
  for (const auto& c : line) CHECK(c.position.y == doctest::Approx(0.45));

  // 2x2 clear floor -> 11x11 grid
  UserClassGeometry floor;
  floor.sample_kind = UserClassGeometry::SampleKind::Grid;
  floor.grid_region = geom::PolygonSet{geom::make_rect(0, 0, 2, 2)};
  floor.target_kind = UserClassGeometry::TargetKind::Point;
  floor.target_point = {1, 1};
  floor.stand_region = floor.grid_region;
  const auto grid = place::sample_class(floor, 0, cfg);
  CHECK(grid.size() == 121);
}

TEST_CASE("filter: clearance, table-corner clip, sittable exemption") {
  PlacementConfig cfg;
  UserClassGeometry g;
  g.stand_region = geom::PolygonSet{geom::make_rect(-10, -10, 10, 10)};
  g.forbidden = geom::PolygonSet{geom::make_rect(0, 0, 2, 1)};  // a table

  auto mk = [](double x, double y) {
    Candidate c;
    c.position = {x, y};
    return c;
  };
  // open floor: kept
  auto kept = place::filter_class({mk(1.0, 2.0)}, g, cfg);
  CHECK(kept.size() == 1);
  // disk clips the table corner: removed
  kept = place::filter_class({mk(2.1, 1.1)}, g, cfg);
  CHECK(kept.empty());
  // sittable cell: chair area removed from the forbidden set at build time;
  // a candidate on the chair survives and is tagged
  UserClassGeometry gs = g;
  gs.sittable = geom::PolygonSet{geom::make_rect(0.5, 1.1, 1.0, 1.6)};
  gs.forbidden = geom::subtract(g.forbidden, gs.sittable);
  kept = place::filter_class({mk(0.75, 1.42)}, gs, cfg);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].on_sittable);
}

TEST_CASE("filter: personal square must fit the standing region") {
  PlacementConfig cfg;
  UserClassGeometry g;
  g.stand_region = geom::PolygonSet{geom::make_rect(0, 0, 2, 2)};
  auto mk = [](double x, double y) {
    Candidate c;
    c.position = {x, y};
    return c;
  };
  CHECK(place::filter_class({mk(1.0, 1.0)}, g, cfg).size() == 1);
  // disk clear of (empty) forbidden but the square pokes outside
  CHECK(place::filter_class({mk(0.25, 1.0)}, g, cfg).empty());
}

TEST_CASE("select: two users on a ring sit apart, one user takes the nearest seat") {
  PlacementConfig cfg;
  cfg.n_hosts = 1;
  cfg.n_clients = 1;
  CandidateSets sets(2);
  // ten well-spread candidates on a circle of radius 1.2
  for (int i = 0; i < 10; ++i) {
    const double a = 2.0 * geom::kPi * i / 10.0;
    Candidate c;
    c.position = {1.2 * std::cos(a), 1.2 * std::sin(a)};
    c.target_dist = 1.2 + 0.01 * i;
    c.owner = 0;
    sets[0].push_back(c);
    c.owner = 1;
    sets[1].push_back(c);
  }
  const place::Placement p = place::select_positions(sets, cfg);
  REQUIRE(p.success);
  CHECK(p.positions.size() == 2);
  CHECK(p.min_pairwise_gap >= 0.6);

  PlacementConfig solo = cfg;
  solo.n_clients = 0;
  const place::Placement p1 = place::select_positions({sets[0]}, solo);
  REQUIRE(p1.success);
  CHECK(p1.objective == doctest::Approx(1.2));  // nearest-to-target candidate
}

TEST_CASE("select: ring that cannot hold seven spaced users fails") {
  PlacementConfig cfg;
  cfg.n_hosts = 7;
  cfg.n_clients = 0;
  // 12 candidates on a circle of circumference ~3.7 m < 7 * 0.6
  CandidateSets sets(1);
  for (int i = 0; i < 12; ++i) {
    const double a = 2.0 * geom::kPi * i / 12.0;
    Candidate c;
    c.position = {0.59 * std::cos(a), 0.59 * std::sin(a)};
    c.target_dist = 1.0;
    sets[0].push_back(c);
  }
  const place::Placement p = place::select_positions(sets, cfg);
  CHECK_FALSE(p.success);
}

TEST_CASE("select: feasibility and objective match brute force on small instances") {
  opt::SplitMix64 rng(2024);
  int feasible_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n_classes = 1 + static_cast<int>(rng.next_below(3));
    CandidateSets sets = synthetic_sets(rng, n_classes, 12);
    PlacementConfig cfg;
    cfg.n_hosts = 1;
    cfg.n_clients = n_classes - 1;
    const place::Placement mine = place::select_positions(sets, cfg);
    const auto brute = oracles::brute_force_placement(sets, cfg.n_hosts, cfg.personal_diameter);
    CAPTURE(trial);
    CHECK(mine.success == brute.feasible);
    if (brute.feasible && mine.success) {
      ++feasible_seen;
      CHECK(mine.objective <= brute.best_objective * 1.10 + 1e-12);
      for (std::size_t i = 0; i < mine.positions.size(); ++i)
        for (std::size_t j = i + 1; j < mine.positions.size(); ++j)
          CHECK(geom::distance(mine.positions[i], mine.positions[j]) >= 0.6);
    }
  }
  CHECK(feasible_seen > 5);
}

TEST_CASE("select: adding candidates never flips success off") {
  opt::SplitMix64 rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    CandidateSets sets = synthetic_sets(rng, 2, 10);
    PlacementConfig cfg;
    cfg.n_hosts = 1;
    cfg.n_clients = 1;
    const place::Placement before = place::select_positions(sets, cfg);
    if (!before.success) continue;
    CandidateSets more = sets;
    for (int k = 0; k < 2; ++k) {
      Candidate c;
      c.position = {rng.uniform(-1, 3), rng.uniform(-1, 3)};
      c.owner = k;
      c.target_dist = rng.uniform(0, 3);
      more[k].push_back(c);
    }
    const place::Placement after = place::select_positions(more, cfg);
    CHECK(after.success);
  }
}

TEST_CASE("select: deterministic for identical inputs") {
  opt::SplitMix64 rng(31);
  const CandidateSets sets = synthetic_sets(rng, 3, 14);
  PlacementConfig cfg;
  cfg.n_hosts = 1;
  cfg.n_clients = 2;
  const place::Placement a = place::select_positions(sets, cfg);
  const place::Placement b = place::select_positions(sets, cfg);
  REQUIRE(a.success == b.success);
  REQUIRE(a.positions.size() == b.positions.size());
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    CHECK(a.positions[i].x == b.positions[i].x);
    CHECK(a.positions[i].y == b.positions[i].y);
  }
}
