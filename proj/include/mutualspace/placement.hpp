#pragma once

#include <span>
#include <vector>

#include "mutualspace/floorplan.hpp"
#include "mutualspace/geometry.hpp"
#include "mutualspace/matching.hpp"

namespace mutualspace::place {

struct PlacementConfig {
  double d_step = 0.2;            // m, candidate sampling pitch
  double personal_diameter = 0.6; // m, minimum pairwise gap and clearance disk
  double surface_offset = 0.45;   // m, user center to table/wall surface
  int n_hosts = 1;
  int n_clients = 0;
};

// User class 0 is the host users; class k >= 1 is client k.
struct Candidate {
  geom::Point2 position;
  int owner = 0;
  bool on_sittable = false;
  double target_dist = 0.0;
};

using CandidateSets = std::vector<std::vector<Candidate>>;  // indexed by user class

// Per-class geometry driving sampling, clearance, and the distance objective.
struct UserClassGeometry {
  geom::PolygonSet forbidden;     // the clearance disk must avoid this
  geom::PolygonSet stand_region;  // the personal square must fit inside
  geom::PolygonSet sittable;      // cells that beat the forbidden set (table context)
  double frame_angle = 0.0;       // orientation of the personal square

  enum class TargetKind { PolyBoundary, Face, Point } target_kind = TargetKind::Point;
  geom::Polygon target_poly;
  geom::Segment target_face;
  geom::Point2 target_point;

  enum class SampleKind { Ring, Line, Grid } sample_kind = SampleKind::Grid;
  geom::Polygon ring_source;    // table outline to offset (host coordinates)
  geom::Segment line_source;    // already-offset wall line (host coordinates)
  geom::PolygonSet grid_region; // floor region to grid
};

double target_distance(const UserClassGeometry& g, geom::Point2 p);

struct PlacementInputs {
  plan::Context context = plan::Context::Floor;
  const plan::SemanticMap* host_map = nullptr;
  geom::Polygon host_target_table;  // table context
  geom::Segment host_target_face;   // wall context, inner face
  struct Client {
    const plan::Floorplan* plan = nullptr;
    const plan::SemanticMap* map = nullptr;
    geom::Pose pose;
    geom::Polygon target_table;        // client coordinates
    geom::Segment target_face;         // client coordinates, inner face
    const match::OverlayClasses* overlay = nullptr;
  };
  std::vector<Client> clients;
};

// Class geometry for the host users and each client under the SA pipeline.
std::vector<UserClassGeometry> build_user_geometry(const PlacementInputs& in,
                                                   const PlacementConfig& cfg);

// Raw geometric candidates: offset ring (table), offset line (wall), or
// d_step grid (floor); points inside the class's forbidden set are dropped.
std::vector<Candidate> sample_class(const UserClassGeometry& g, int owner,
                                    const PlacementConfig& cfg);
CandidateSets sample_candidates(std::span<const UserClassGeometry> geoms,
                                const PlacementConfig& cfg);

// Personal-space filter: clearance disk vs. the forbidden set plus the
// personal square inside the standing region.
std::vector<Candidate> filter_class(std::vector<Candidate> cands, const UserClassGeometry& g,
                                    const PlacementConfig& cfg);
CandidateSets filter_candidates(const CandidateSets& sets,
                                std::span<const UserClassGeometry> geoms,
                                const PlacementConfig& cfg);

struct Placement {
  bool success = false;
  std::vector<geom::Point2> positions;  // host users first, then client 1..k
  std::vector<int> owners;
  double min_pairwise_gap = 0.0;
  double objective = 0.0;  // sum of per-user target distances
};

// Joint assignment: one candidate per user, pairwise gaps >= the personal
// diameter, minimizing the summed target distance. Candidate pruning with an
// inflated personal diameter runs first when class geometry is available;
// the search is backtracking insertion in scarcity order plus local moves.
// Failure is a value (success = false), not an error.
Placement select_positions(const CandidateSets& sets, const PlacementConfig& cfg,
                           std::span<const UserClassGeometry> geoms = {});

}  // namespace mutualspace::place
