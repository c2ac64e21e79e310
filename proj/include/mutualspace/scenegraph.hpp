#pragma once

#include <string>
#include <vector>

#include "mutualspace/floorplan.hpp"
#include "mutualspace/geometry.hpp"

namespace mutualspace::scene {

inline constexpr double kPersonalArea = 0.6;       // m, edge-forming distance
inline constexpr double kWallBandDepth = 1.0;      // m, standing zone in front of a wall
inline constexpr char kMovableFloorTarget[] = "movable-floor";

enum class Affordance { Sittable, Obstacle, Surface };

enum class Direction { North, East, South, West };

const char* to_string(Direction d);
Direction rotated(Direction d, int quarter_turns);  // CCW quarter turns
// Dominant axis of a displacement; 45-degree ties resolve in N, E, S, W order.
Direction dominant_direction(geom::Point2 displacement);

struct Obb {
  geom::Point2 center;
  double half_u = 0.0, half_v = 0.0;
  double angle = 0.0;  // radians of the u axis
};

Obb axis_aligned_obb(const geom::Polygon& shape);

struct ObjectNode {
  std::string region_id;
  plan::SemanticLabel label = plan::SemanticLabel::Obstacle;
  Affordance affordance = Affordance::Obstacle;
  Obb obb;
};

Affordance affordance_of(plan::SemanticLabel label);

struct GraphEdge {
  std::string from, to;
  Direction direction = Direction::North;
  double gap = 0.0;  // boundary-to-boundary distance, <= 0.6
  Affordance neighbor_affordance = Affordance::Obstacle;
};

struct SceneGraph {
  ObjectNode center;
  std::vector<GraphEdge> edges;
};

// Graph centered on a table/wall region; neighbors are chairs and obstacles
// whose boundary lies within the 0.6 m personal area of the center.
SceneGraph build_graph(const plan::Floorplan& fp, const std::string& center_region_id);

SceneGraph rotated(const SceneGraph& g, int quarter_turns);

// Directional agreement score in [0,1]: 0.25 per direction whose dominant
// neighbor affordance class (sittable / obstacle / none) matches.
double match_score(const SceneGraph& host, const SceneGraph& client);

struct TargetSelection {
  std::string region_id;
  int rotation_quarters = 0;  // client rotation in 90-degree steps
  double score = 1.0;
};

struct TargetPair {
  TargetSelection host;
  TargetSelection client;
};

// Inner (room-side) face of a thin wall region, and the free-floor area in
// the 1 m band in front of it.
geom::Segment wall_inner_face(const plan::Floorplan& fp, const plan::LabeledRegion& wall);
double wall_front_floor_area(const plan::Floorplan& fp, const plan::LabeledRegion& wall);

// Target object per context. Table: scene-graph matching over all client
// tables and quarter-turn rotations. Wall: widest adjacent free floor on
// both sides. Floor: the movable floor. Throws TargetNotFoundError when no
// candidate object exists.
TargetPair select_target(const plan::Floorplan& host, const plan::Floorplan& client,
                         plan::Context context, const std::string& host_target_id = "");

}  // namespace mutualspace::scene
