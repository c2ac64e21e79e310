#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mutualspace/floorplan.hpp"
#include "mutualspace/geometry.hpp"
#include "mutualspace/scenegraph.hpp"

namespace mutualspace::match {

// Weights of the five objective terms: semantic match, matched size,
// horizontal boundary sync, vertical surface sync, movable floor sync.
struct ContextWeights {
  double sem = 10.0, size = 10.0, hor = 0.0, ver = 0.0, mov = 0.0;

  static ContextWeights sa_table() { return {10.0, 10.0, 100.0, 0.0, 0.0}; }
  static ContextWeights sa_wall() { return {10.0, 10.0, 0.0, 100.0, 0.0}; }
  static ContextWeights sa_floor() { return {10.0, 10.0, 0.0, 0.0, 100.0}; }
  static ContextWeights geometric() { return {10.0, 10.0, 0.0, 0.0, 0.0}; }
};

struct MatchConfig {
  int population = 32;
  int generations = 100;
  std::uint64_t seed = 1;
  bool continuous_rotation = false;  // default: quarter turns only
  double boundary_eps = 0.05;       // m, boundary alignment tolerance
  int jobs = 0;                     // 0 = OpenMP default
};

struct PsiTerms {
  double sem = 0.0, size = 0.0, hor = 0.0, ver = 0.0, mov = 0.0;
};

struct MatchResult {
  geom::Pose pose;
  double objective = 0.0;
  PsiTerms terms;
  std::string host_target, client_target;
};

// Pose-independent precomputation for one (host, client, context) pair.
struct PairSetup {
  plan::Context context = plan::Context::Floor;
  const plan::Floorplan* host = nullptr;
  const plan::Floorplan* client = nullptr;
  plan::SemanticMap host_map, client_map;
  scene::TargetPair targets;
  bool has_tables = false;
  geom::Polygon host_table, client_table;
  bool has_walls = false;
  geom::Segment host_wall_face;
  std::vector<geom::Segment> client_wall_faces;
};

PairSetup prepare_pair(const plan::Floorplan& host, const plan::Floorplan& client,
                       plan::Context context, const std::string& host_target_id = "");

// The five objective terms, each in [0,1].
double psi_g_sem(const plan::SemanticMap& host, const plan::SemanticMap& client,
                 const geom::Pose& pose, plan::Context context);
double psi_g_size(const plan::SemanticMap& host, const plan::SemanticMap& client,
                  const geom::Pose& pose);
double psi_i_hor(const geom::Polygon& host_table, const geom::Polygon& client_table,
                 const geom::Pose& pose, double eps_b);
double psi_i_ver(const geom::Segment& host_face, std::span<const geom::Segment> client_faces,
                 const geom::Pose& pose, double eps_b);
double psi_i_mov(const plan::SemanticMap& host, const plan::SemanticMap& client,
                 const geom::Pose& pose);

// Weighted objective at one pose; all five terms populated.
MatchResult objective_at(const PairSetup& setup, const geom::Pose& pose,
                         const ContextWeights& weights, double boundary_eps = 0.05);

// Objective values for a batch of poses; the OpenMP kernel and its serial
// reference. Non-overlapping poses score -1.
std::vector<double> batch_objective(const PairSetup& setup, std::span<const geom::Pose> poses,
                                    const ContextWeights& weights, int jobs);
std::vector<double> batch_objective_serial(const PairSetup& setup,
                                           std::span<const geom::Pose> poses,
                                           const ContextWeights& weights);

// Seeded global search over poses (differential evolution per quarter-turn
// start plus a pattern-search polish). Deterministic for a fixed seed.
// Throws MatchFailedError when no overlapping pose is found.
MatchResult optimize_pose(const PairSetup& setup, const ContextWeights& weights,
                          const MatchConfig& cfg);

// Per-class semantic overlay of host and transformed client, in host
// coordinates. Input to placement, subspace extraction, and metrics.
struct OverlayClasses {
  geom::PolygonSet common_footprint;  // host ∩ T(client)
  geom::PolygonSet matched_table, matched_wall, matched_floor, matched_chair, matched_obstacle;
  geom::PolygonSet matched_all;       // union of matched classes
  geom::PolygonSet unmatched;         // common footprint minus matched
  geom::PolygonSet matched_walkable;  // host movable floor ∩ T(client movable floor)
  geom::PolygonSet client_footprint;  // T(client boundary)
};

OverlayClasses semantic_overlay(const plan::SemanticMap& host, const plan::SemanticMap& client,
                                const geom::Pose& pose, plan::Context context);

}  // namespace mutualspace::match
