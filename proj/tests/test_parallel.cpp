#include <doctest.h>

#include <nlohmann/json.hpp>

#include "mutualspace/corpus.hpp"
#include "mutualspace/evaluation.hpp"
#include "mutualspace/matching.hpp"
#include "mutualspace/optimizer.hpp"
#include "oracles.hpp"

// The OpenMP kernels must reproduce their serial reference implementations
// bit for bit: rasterization rows, objective batches, and whole sweeps.

using namespace mutualspace;

TEST_CASE("rasterize: parallel kernel equals the serial reference") {
  opt::SplitMix64 rng(8);
  for (int i = 0; i < 5; ++i) {
    geom::PolygonSet s;
    s.parts.push_back(oracles::random_star_polygon(rng, 0, 0, 9, 0.5, 2.0));
    s.parts.push_back(oracles::random_star_polygon(rng, 4.5, 0.5, 7, 0.4, 1.5));
    const geom::OccupancyGrid a = geom::rasterize(s, 0.02);
    const geom::OccupancyGrid b = geom::rasterize_serial(s, 0.02);
    REQUIRE(a.nx == b.nx);
    REQUIRE(a.ny == b.ny);
    CHECK(a.cells == b.cells);
    CHECK(a.x0 == b.x0);
    CHECK(a.y0 == b.y0);
  }
}

TEST_CASE("batch_objective: parallel batch equals the serial reference") {
  const eval::Corpus corpus = corpus::builtin_corpus();
  const match::PairSetup setup =
      match::prepare_pair(corpus.hosts[0], corpus.homes[1], plan::Context::Floor);
  opt::SplitMix64 rng(21);
  std::vector<geom::Pose> poses;
  for (int i = 0; i < 64; ++i)
    poses.push_back({rng.uniform(-4, 6), rng.uniform(-4, 6), rng.next_below(4) * geom::kPi / 2});
  const auto par = match::batch_objective(setup, poses, match::ContextWeights::sa_floor(), 0);
  const auto ser = match::batch_objective_serial(setup, poses, match::ContextWeights::sa_floor());
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}

TEST_CASE("run_sweep: jobs=1 and jobs=4 produce identical records") {
  // Clients are host copies, so the sweep is small but exercises the full
  // pipeline.
  const eval::Corpus full = corpus::builtin_corpus();
  eval::Corpus corpus;
  corpus.hosts = {full.hosts[2]};
  plan::Floorplan home = full.homes[4];
  plan::Floorplan office = full.offices[0];
  corpus.homes = {home};
  corpus.offices = {office};

  eval::EvalConfig cfg;
  cfg.match.population = 8;
  cfg.match.generations = 20;
  cfg.match.seed = 17;

  cfg.jobs = 1;
  eval::PoseCache cache1;
  cache1.precompute(corpus, eval::all_methods(), cfg);
  const auto serial =
      eval::run_sweep(corpus, eval::all_methods(), {eval::Condition::H1C2}, {1, 2}, cfg, cache1);

  cfg.jobs = 4;
  eval::PoseCache cache4;
  cache4.precompute(corpus, eval::all_methods(), cfg);
  const auto parallel =
      eval::run_sweep(corpus, eval::all_methods(), {eval::Condition::H1C2}, {1, 2}, cfg, cache4);

  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CAPTURE(i);
    CHECK(eval::record_to_json(serial[i]).dump() == eval::record_to_json(parallel[i]).dump());
  }
}
