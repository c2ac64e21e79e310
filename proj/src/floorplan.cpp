#include "mutualspace/floorplan.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mutualspace/errors.hpp"

namespace mutualspace::plan {

using nlohmann::json;

const char* to_string(SemanticLabel label) {
  switch (label) {
    case SemanticLabel::Table: return "table";
    case SemanticLabel::Wall: return "wall";
    case SemanticLabel::Chair: return "chair";
    case SemanticLabel::Obstacle: return "obstacle";
    case SemanticLabel::Floor: return "floor";
  }
  return "?";
}

const char* to_string(PlanKind kind) {
  switch (kind) {
    case PlanKind::Host: return "host";
    case PlanKind::Home: return "home";
    case PlanKind::Office: return "office";
  }
  return "?";
}

const char* to_string(Context context) {
  switch (context) {
    case Context::Table: return "table";
    case Context::Wall: return "wall";
    case Context::Floor: return "floor";
  }
  return "?";
}

Context context_from_string(const std::string& s) {
  if (s == "table") return Context::Table;
  if (s == "wall") return Context::Wall;
  if (s == "floor") return Context::Floor;
  throw ParseError("unknown context '" + s + "' (expected table|wall|floor)");
}

namespace {

SemanticLabel region_label_from_string(const std::string& s, const std::string& path) {
  if (s == "table") return SemanticLabel::Table;
  if (s == "wall") return SemanticLabel::Wall;
  if (s == "chair") return SemanticLabel::Chair;
  if (s == "obstacle") return SemanticLabel::Obstacle;
  throw ParseError(path + ": unknown label '" + s + "'");
}

PlanKind kind_from_string(const std::string& s, const std::string& path) {
  if (s == "host") return PlanKind::Host;
  if (s == "home") return PlanKind::Home;
  if (s == "office") return PlanKind::Office;
  throw ParseError(path + ": unknown kind '" + s + "'");
}

geom::Polygon polygon_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of [x,y] pairs");
  geom::Polygon p;
  p.pts.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& v = j[i];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ParseError(path + "[" + std::to_string(i) + "]: expected [x,y]");
    p.pts.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return p;
}

json polygon_to_json(const geom::Polygon& p) {
  json j = json::array();
  for (const auto& v : p.pts) j.push_back({v.x, v.y});
  return j;
}

const json& require(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + ": missing field '" + key + "'");
  return *it;
}

}  // namespace

const LabeledRegion* Floorplan::find_region(const std::string& region_id) const {
  for (const auto& r : regions)
    if (r.id == region_id) return &r;
  return nullptr;
}

std::vector<const LabeledRegion*> Floorplan::regions_with(SemanticLabel label) const {
  std::vector<const LabeledRegion*> out;
  for (const auto& r : regions)
    if (r.label == label) out.push_back(&r);
  return out;
}

Floorplan floorplan_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("$: expected a JSON object");
  Floorplan fp;
  fp.id = require(j, "id", "$").get<std::string>();
  fp.kind = kind_from_string(require(j, "kind", "$").get<std::string>(), "$.kind");
  fp.boundary = polygon_from_json(require(j, "boundary", "$"), "$.boundary");
  const json& regions = require(j, "regions", "$");
  if (!regions.is_array()) throw ParseError("$.regions: expected an array");
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const std::string path = "$.regions[" + std::to_string(i) + "]";
    const json& rj = regions[i];
    if (!rj.is_object()) throw ParseError(path + ": expected an object");
    LabeledRegion r;
    r.id = require(rj, "id", path).get<std::string>();
    r.label = region_label_from_string(require(rj, "label", path).get<std::string>(), path + ".label");
    r.shape = polygon_from_json(require(rj, "polygon", path), path + ".polygon");
    fp.regions.push_back(std::move(r));
  }
  validate(fp);
  return fp;
}

json to_json(const Floorplan& fp) {
  json j;
  j["id"] = fp.id;
  j["kind"] = to_string(fp.kind);
  j["boundary"] = polygon_to_json(fp.boundary);
  json regions = json::array();
  for (const auto& r : fp.regions) {
    json rj;
    rj["id"] = r.id;
    rj["label"] = to_string(r.label);
    rj["polygon"] = polygon_to_json(r.shape);
    regions.push_back(std::move(rj));
  }
  j["regions"] = std::move(regions);
  return j;
}

Floorplan parse_floorplan(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return floorplan_from_json(j);
}

Floorplan load_floorplan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_floorplan(ss.str());
}

void save_floorplan(const Floorplan& fp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << to_json(fp).dump(2) << "\n";
}

void validate(const Floorplan& fp) {
  if (fp.id.empty()) throw ValidationError("floorplan id must not be empty");
  geom::validate_polygon(fp.boundary, "boundary of '" + fp.id + "'");
  const double barea = fp.boundary.area();
  if (barea < 4.0 || barea > 200.0)
    throw ValidationError("'" + fp.id + "': boundary area " + std::to_string(barea) +
                          " outside [4, 200] m^2");
  const geom::PolygonSet boundary_set{fp.boundary};
  std::vector<std::string> seen;
  for (const auto& r : fp.regions) {
    geom::validate_polygon(r.shape, "region '" + r.id + "'");
    for (const auto& id : seen)
      if (id == r.id) throw ValidationError("duplicate region id '" + r.id + "'");
    seen.push_back(r.id);
    const geom::PolygonSet outside =
        geom::subtract(geom::PolygonSet{r.shape}, boundary_set);
    if (outside.area() > geom::kDistEps)
      throw ValidationError("region '" + r.id + "' extends outside the boundary");
  }
  // Regions must be pairwise interior-disjoint (chairs only overlap floor,
  // which is implicit, so any region/region overlap is an error).
  for (std::size_t i = 0; i < fp.regions.size(); ++i) {
    for (std::size_t j = i + 1; j < fp.regions.size(); ++j) {
      const geom::PolygonSet overlap = geom::intersect(geom::PolygonSet{fp.regions[i].shape},
                                                       geom::PolygonSet{fp.regions[j].shape});
      if (overlap.area() > geom::kAreaEps)
        throw ValidationError("regions '" + fp.regions[i].id + "' and '" + fp.regions[j].id +
                              "' overlap");
    }
  }
}

namespace {

geom::PolygonSet union_of(const Floorplan& fp, SemanticLabel label) {
  geom::PolygonSet out;
  for (const auto& r : fp.regions)
    if (r.label == label) out.parts.push_back(r.shape);
  return out;
}

}  // namespace

SemanticMap semantic_map(const Floorplan& fp, Context context) {
  SemanticMap m;
  m.context = context;
  m.boundary = fp.boundary;
  m.footprint = geom::PolygonSet{fp.boundary};
  m.table = geom::intersect(union_of(fp, SemanticLabel::Table), m.footprint);
  m.wall = geom::intersect(union_of(fp, SemanticLabel::Wall), m.footprint);
  m.chair = geom::intersect(union_of(fp, SemanticLabel::Chair), m.footprint);
  m.obstacle = geom::intersect(union_of(fp, SemanticLabel::Obstacle), m.footprint);

  geom::PolygonSet occupied = geom::unite(m.table, m.wall);
  occupied = geom::unite(occupied, m.obstacle);
  const geom::PolygonSet blocked_no_chair = occupied;
  occupied = geom::unite(occupied, m.chair);
  m.floor = geom::subtract(m.footprint, occupied);
  if (context == Context::Table) {
    // Chairs are sittable: they do not block walkable floor.
    m.movable_floor = geom::subtract(m.footprint, blocked_no_chair);
    m.sittable = m.chair;
  } else {
    m.movable_floor = m.floor;
  }
  return m;
}

SemanticLabel label_at(const SemanticMap& map, geom::Point2 p) {
  if (!geom::point_in_polygon(p, map.boundary))
    throw ValidationError("label_at: point outside the floorplan boundary");
  if (geom::contains(map.wall, p)) return SemanticLabel::Wall;
  if (geom::contains(map.table, p)) return SemanticLabel::Table;
  if (geom::contains(map.obstacle, p)) return SemanticLabel::Obstacle;
  if (geom::contains(map.chair, p)) return SemanticLabel::Chair;
  return SemanticLabel::Floor;
}

}  // namespace mutualspace::plan
