#include <doctest.h>

#include <cmath>

#include "mutualspace/corpus.hpp"
#include "mutualspace/matching.hpp"
#include "mutualspace/optimizer.hpp"
#include "oracles.hpp"

using namespace mutualspace;
using geom::Pose;
using plan::Context;

namespace {

plan::Floorplan bare_room(const std::string& id, double w, double h) {
  plan::Floorplan fp;
  fp.id = id;
  fp.kind = plan::PlanKind::Home;
  fp.boundary = geom::make_rect(0, 0, w, h);
  return fp;
}

plan::Floorplan transformed_plan(const plan::Floorplan& fp, const Pose& pose) {
  plan::Floorplan out = fp;
  out.boundary = geom::transformed(fp.boundary, pose);
  for (std::size_t i = 0; i < fp.regions.size(); ++i)
    out.regions[i].shape = geom::transformed(fp.regions[i].shape, pose);
  return out;
}

}  // namespace

TEST_CASE("psi_g_sem: identity, mixed labels, zero overlap") {
  plan::Floorplan host = bare_room("host", 4, 4);
  host.regions.push_back({"table-1", plan::SemanticLabel::Table, geom::make_rect(1, 1, 3, 2)});
  plan::validate(host);
  const plan::SemanticMap hm = plan::semantic_map(host, Context::Floor);
  CHECK(match::psi_g_sem(hm, hm, Pose{}, Context::Floor) == doctest::Approx(1.0).epsilon(1e-6));

  // all-floor 2x2 client centered on the host table: half the overlap matches
  const plan::Floorplan client = bare_room("client", 2, 2);
  const plan::SemanticMap cm = plan::semantic_map(client, Context::Floor);
  const Pose centered{1.0, 0.5, 0.0};  // client center -> (2, 1.5) = table center
  CHECK(match::psi_g_sem(hm, cm, centered, Context::Floor) == doctest::Approx(0.5).epsilon(1e-6));

  CHECK(match::psi_g_sem(hm, cm, Pose{50, 0, 0}, Context::Floor) == 0.0);
}

TEST_CASE("psi_g_size: cover, quarter, disjoint") {
  const plan::Floorplan host = bare_room("host", 4, 4);
  const plan::Floorplan big = bare_room("big", 8, 8);
  const plan::Floorplan small = bare_room("small", 2, 2);
  const plan::SemanticMap hm = plan::semantic_map(host, Context::Floor);
  const plan::SemanticMap bm = plan::semantic_map(big, Context::Floor);
  CHECK(match::psi_g_size(hm, bm, Pose{-2, -2, 0}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(match::psi_g_size(hm, plan::semantic_map(small, Context::Floor), Pose{1, 1, 0}) ==
        doctest::Approx(0.25).epsilon(1e-9));
  CHECK(match::psi_g_size(hm, plan::semantic_map(small, Context::Floor), Pose{40, 0, 0}) == 0.0);
}

TEST_CASE("psi_i_hor: coincident, shared edge over perimeter, offset beyond eps") {
  const geom::Polygon host_table = geom::make_rect(0, 0, 2, 1);
  CHECK(match::psi_i_hor(host_table, host_table, Pose{}, 0.05) ==
        doctest::Approx(1.0).epsilon(1e-6));

  const geom::Polygon client_table = geom::make_rect(0, 1, 1, 2);
  CHECK(match::psi_i_hor(host_table, client_table, Pose{}, 0.05) ==
        doctest::Approx(1.0 / 6.0).epsilon(0.02));

  CHECK(match::psi_i_hor(host_table, host_table, Pose{0.2, 0.2, 0}, 0.05) == 0.0);
}

TEST_CASE("psi_i_ver: flush, partial, perpendicular") {
  const geom::Segment host_face{{1, 3.9}, {5, 3.9}};
  const geom::Segment full = host_face;
  const geom::Segment half{{1, 3.9}, {3, 3.9}};
  const geom::Segment perp{{2, 1}, {2, 3}};
  CHECK(match::psi_i_ver(host_face, std::vector{full}, Pose{}, 0.05) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(match::psi_i_ver(host_face, std::vector{half}, Pose{}, 0.05) ==
        doctest::Approx(0.5).epsilon(0.02));
  CHECK(match::psi_i_ver(host_face, std::vector{perp}, Pose{}, 0.05) == 0.0);
}

TEST_CASE("psi_i_mov: identity, half cover, disjoint") {
  const plan::Floorplan host = bare_room("host", 4, 4);
  const plan::Floorplan half = bare_room("half", 4, 2);
  const plan::SemanticMap hm = plan::semantic_map(host, Context::Floor);
  const plan::SemanticMap qm = plan::semantic_map(half, Context::Floor);
  CHECK(match::psi_i_mov(hm, hm, Pose{}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(match::psi_i_mov(hm, qm, Pose{}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(match::psi_i_mov(hm, qm, Pose{30, 30, 0}) == 0.0);
}

TEST_CASE("objective: weighted sum identity and arithmetic") {
  const eval::Corpus corpus = corpus::builtin_corpus();
  const plan::Floorplan& host = corpus.hosts[1];
  const match::PairSetup self = match::prepare_pair(host, host, Context::Table);

  // self-match at identity: every active term is 1
  const match::MatchResult r =
      match::objective_at(self, Pose{}, match::ContextWeights::sa_table());
  CHECK(r.objective == doctest::Approx(120.0).epsilon(1e-6));
  CHECK(r.terms.sem == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.terms.hor == doctest::Approx(1.0).epsilon(1e-6));

  // objective equals the dot product of weights and terms
  const match::ContextWeights w{10, 10, 0, 0, 0};
  const match::MatchResult r2 = match::objective_at(self, Pose{0.3, -0.2, 0}, w);
  const double expect = 10 * r2.terms.sem + 10 * r2.terms.size;
  CHECK(std::abs(r2.objective - expect) < 1e-9);

  // all-zero weights
  const match::MatchResult r3 = match::objective_at(self, Pose{0.3, -0.2, 0},
                                                    match::ContextWeights{0, 0, 0, 0, 0});
  CHECK(r3.objective == 0.0);
}

TEST_CASE("property: every psi term stays in [0,1] at random poses") {
  const eval::Corpus corpus = corpus::builtin_corpus();
  const match::PairSetup setup =
      match::prepare_pair(corpus.hosts[0], corpus.homes[2], Context::Table);
  opt::SplitMix64 rng(99);
  for (int i = 0; i < 40; ++i) {
    const Pose pose{rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(0, 2 * geom::kPi)};
    const match::MatchResult r =
        match::objective_at(setup, pose, match::ContextWeights::sa_table());
    for (double t : {r.terms.sem, r.terms.size, r.terms.hor, r.terms.ver, r.terms.mov}) {
      CHECK(t >= 0.0);
      CHECK(t <= 1.0);
    }
  }
}

TEST_CASE("oracle: area psi terms match the label-grid recomputation") {
  const eval::Corpus corpus = corpus::builtin_corpus();
  const plan::Floorplan& host = corpus.hosts[2];
  const plan::Floorplan& client = corpus.homes[1];
  const match::PairSetup setup = match::prepare_pair(host, client, Context::Floor);
  opt::SplitMix64 rng(4242);
  int tested = 0;
  while (tested < 4) {
    const Pose pose{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                    (rng.next_below(4)) * geom::kPi / 2.0};
    const match::MatchResult r =
        match::objective_at(setup, pose, match::ContextWeights::sa_floor());
    if (r.terms.size < 0.05) continue;
    ++tested;
    const oracles::PsiGrid g = oracles::psi_area_terms_grid(host, client, pose, Context::Floor);
    CHECK(std::abs(r.terms.sem - g.sem) < 0.02);
    CHECK(std::abs(r.terms.size - g.size) < 0.02);
    CHECK(std::abs(r.terms.mov - g.mov) < 0.02);
  }
}

TEST_CASE("optimize_pose: self-match recovers a near-perfect floor alignment") {
  const eval::Corpus corpus = corpus::builtin_corpus();
  const plan::Floorplan& fp = corpus.homes[0];
  const match::PairSetup setup = match::prepare_pair(fp, fp, Context::Floor);
  match::MatchConfig cfg;
  cfg.population = 16;
  cfg.generations = 30;
  cfg.seed = 5;
  const match::MatchResult r = match::optimize_pose(setup, match::ContextWeights::sa_floor(), cfg);
  CHECK(r.terms.sem >= 0.999);
  CHECK(r.terms.mov >= 0.999);
}

TEST_CASE("optimize_pose: deterministic for a fixed seed") {
  const eval::Corpus corpus = corpus::builtin_corpus();
  const match::PairSetup setup =
      match::prepare_pair(corpus.hosts[3], corpus.offices[1], Context::Floor);
  match::MatchConfig cfg;
  cfg.population = 8;
  cfg.generations = 20;
  cfg.seed = 77;
  const match::MatchResult a = match::optimize_pose(setup, match::ContextWeights::sa_floor(), cfg);
  const match::MatchResult b = match::optimize_pose(setup, match::ContextWeights::sa_floor(), cfg);
  CHECK(a.pose.tx == b.pose.tx);
  CHECK(a.pose.ty == b.pose.ty);
  CHECK(a.pose.theta == b.pose.theta);
  CHECK(a.objective == b.objective);
}

TEST_CASE("optimize_pose: argmax invariance under client pre-translation") {
  const eval::Corpus corpus = corpus::builtin_corpus();
  const plan::Floorplan& host = corpus.hosts[1];
  const plan::Floorplan& client = corpus.homes[3];
  const plan::Floorplan moved = transformed_plan(client, Pose{1.0, 0.0, 0.0});

  match::MatchConfig cfg;
  cfg.population = 24;
  cfg.generations = 60;
  cfg.seed = 3;
  const match::MatchResult a = match::optimize_pose(
      match::prepare_pair(host, client, Context::Floor), match::ContextWeights::sa_floor(), cfg);
  const match::MatchResult b = match::optimize_pose(
      match::prepare_pair(host, moved, Context::Floor), match::ContextWeights::sa_floor(), cfg);
  CHECK(std::abs(a.objective - b.objective) < 1e-2);
}

TEST_CASE("weighted objective is monotone in each term") {
  const match::ContextWeights w = match::ContextWeights::sa_table();
  auto value = [&](const match::PsiTerms& t) {
    return w.sem * t.sem + w.size * t.size + w.hor * t.hor + w.ver * t.ver + w.mov * t.mov;
  };
  match::PsiTerms t{0.4, 0.5, 0.2, 0.1, 0.9};
  const double base = value(t);
  match::PsiTerms up = t;
  up.hor += 0.3;
  CHECK(value(up) >= base);
  up = t;
  up.sem += 0.1;
  CHECK(value(up) >= base);
}
