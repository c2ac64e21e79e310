#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mutualspace/geometry.hpp"

namespace mutualspace::plan {

// Region labels from the affordance model; Floor is implicit (boundary minus
// all labeled regions) and only appears as a query result.
enum class SemanticLabel { Table, Wall, Chair, Obstacle, Floor };

enum class PlanKind { Host, Home, Office };

// Collaboration context chosen by the host; selects the interaction target
// class and how chairs are classified.
enum class Context { Table, Wall, Floor };

const char* to_string(SemanticLabel label);
const char* to_string(PlanKind kind);
const char* to_string(Context context);
Context context_from_string(const std::string& s);

struct LabeledRegion {
  std::string id;
  SemanticLabel label = SemanticLabel::Obstacle;
  geom::Polygon shape;
};

struct Floorplan {
  std::string id;
  PlanKind kind = PlanKind::Host;
  geom::Polygon boundary;
  std::vector<LabeledRegion> regions;

  const LabeledRegion* find_region(const std::string& region_id) const;
  std::vector<const LabeledRegion*> regions_with(SemanticLabel label) const;
};

// JSON schema (exact): { "id", "kind": "host"|"home"|"office",
//   "boundary": [[x,y],...], "regions": [{ "id", "label", "polygon" }] }.
Floorplan floorplan_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Floorplan& fp);
Floorplan parse_floorplan(const std::string& text);
Floorplan load_floorplan(const std::string& path);
void save_floorplan(const Floorplan& fp, const std::string& path);

// Throws ValidationError naming the offending region.
void validate(const Floorplan& fp);

// Per-label decomposition of a plan for one collaboration context. The label
// sets partition the boundary. For the table context chair cells are
// sittable (user-instantiable) and do not block the movable floor; in the
// wall/floor contexts chairs count as obstacles.
struct SemanticMap {
  Context context = Context::Floor;
  geom::Polygon boundary;
  geom::PolygonSet footprint;  // boundary as a set
  geom::PolygonSet table, wall, chair, obstacle;
  geom::PolygonSet floor;          // boundary minus every labeled region
  geom::PolygonSet movable_floor;  // walkable floor; includes chairs in table context
  geom::PolygonSet sittable;       // chair cells, table context only
};

SemanticMap semantic_map(const Floorplan& fp, Context context);

// Label priority at overlaps: wall > table > obstacle > chair > floor.
// Throws ValidationError if p lies outside the boundary.
SemanticLabel label_at(const SemanticMap& map, geom::Point2 p);

}  // namespace mutualspace::plan
