#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mutualspace/floorplan.hpp"
#include "mutualspace/geometry.hpp"
#include "mutualspace/matching.hpp"
#include "mutualspace/placement.hpp"

namespace mutualspace::subspace {

struct SweepParams {
  double marker_initial_length = 0.6;  // m, l_m
  double marker_thickness = 0.1;       // m
  double marker_start = 0.3;           // m, outer marker edge at rest
  double marker_step = 0.1;            // m, advance per step
  double a_min = 4.0;                  // m^2, enough-interactable-area bar
  double marker_max_length = 6.0;      // m, widening cap
};

// One side's sweep: the marker advances in steps until the next position
// would intersect semantically unmatched area or leave the footprint.
struct SideSweep {
  double travel = 0.0;  // m
  double extent = 0.3;  // m from the user center (marker_start + travel)
};

struct Subspace {
  std::string owner;
  geom::PolygonSet region;  // rectangle spanned by final markers, clipped
  geom::PolygonSet obstacle_region;  // matched obstacles + unmatched inside
  double interactable_area = 0.0;
  double obstacle_area = 0.0;
  double marker_length = 0.6;  // chosen l_m
  geom::Point2 position;
  double frame_angle = 0.0;
  SideSweep sides[4];  // +u, -u, +v, -v in the sweep frame
  std::vector<std::pair<double, double>> widths_tried;  // (l_m, obstacle_area)
};

// Four-marker outward sweep from a placed user. The footprint is the
// transformed client boundary clipped to the host; blocked is the
// semantically unmatched area. Axes follow frame_angle (the client's matched
// rotation). If the initial extraction reaches a_min, wider markers are
// tried and the smallest-obstacle result that still reaches a_min wins.
Subspace extract_subspace(const match::OverlayClasses& overlay,
                          const geom::PolygonSet& footprint, geom::Point2 position,
                          double frame_angle, const SweepParams& params);

struct ClientAllocation {
  std::string client_id;
  geom::Pose pose;
  Subspace subspace;
  std::vector<geom::Segment> walls;
};

struct MutualSpace {
  std::string method;
  plan::Context context = plan::Context::Floor;
  bool success = false;
  plan::Floorplan host;
  struct User {
    std::string label;  // H1.., C1..
    geom::Point2 position;
  };
  std::vector<User> users;
  std::vector<ClientAllocation> clients;
};

// Walls trace each subspace's outer edges, skipping edges flush with the
// context target (table boundary or matched wall face).
std::vector<geom::Segment> boundary_walls(const geom::PolygonSet& region, plan::Context context,
                                          const geom::Polygon& target_table,
                                          const geom::Segment& target_face);

MutualSpace allocate(const plan::Floorplan& host, plan::Context context,
                     const std::string& method, const geom::Polygon& host_target_table,
                     const geom::Segment& host_target_face,
                     std::vector<ClientAllocation> clients, const place::Placement& placement,
                     int n_hosts);

nlohmann::json to_json(const MutualSpace& ms);
MutualSpace mutual_space_from_json(const nlohmann::json& j);

}  // namespace mutualspace::subspace
