#include "mutualspace/scenegraph.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mutualspace/errors.hpp"

namespace mutualspace::scene {

const char* to_string(Direction d) {
  switch (d) {
    case Direction::North: return "N";
    case Direction::East: return "E";
    case Direction::South: return "S";
    case Direction::West: return "W";
  }
  return "?";
}

Direction rotated(Direction d, int quarter_turns) {
  // CCW rotation maps E->N->W->S->E.
  static constexpr std::array<Direction, 4> ccw = {Direction::East, Direction::North,
                                                   Direction::West, Direction::South};
  int idx = 0;
  switch (d) {
    case Direction::East: idx = 0; break;
    case Direction::North: idx = 1; break;
    case Direction::West: idx = 2; break;
    case Direction::South: idx = 3; break;
  }
  const int q = ((quarter_turns % 4) + 4) % 4;
  return ccw[(idx + q) % 4];
}

Direction dominant_direction(geom::Point2 d) {
  const double ax = std::abs(d.x), ay = std::abs(d.y);
  if (ay > ax) return d.y >= 0.0 ? Direction::North : Direction::South;
  if (ax > ay) return d.x >= 0.0 ? Direction::East : Direction::West;
  // 45-degree boundary; first of the adjacent pair in N, E, S, W order wins.
  if (d.y > 0.0) return Direction::North;
  if (d.x > 0.0) return Direction::East;
  if (d.y < 0.0) return Direction::South;
  return Direction::North;
}

Obb axis_aligned_obb(const geom::Polygon& shape) {
  const geom::Bounds b = shape.bounds();
  Obb o;
  o.center = {0.5 * (b.min.x + b.max.x), 0.5 * (b.min.y + b.max.y)};
  o.half_u = 0.5 * b.width();
  o.half_v = 0.5 * b.height();
  o.angle = 0.0;
  return o;
}

Affordance affordance_of(plan::SemanticLabel label) {
  switch (label) {
    case plan::SemanticLabel::Chair: return Affordance::Sittable;
    case plan::SemanticLabel::Table:
    case plan::SemanticLabel::Wall: return Affordance::Surface;
    default: return Affordance::Obstacle;
  }
}

SceneGraph build_graph(const plan::Floorplan& fp, const std::string& center_region_id) {
  const plan::LabeledRegion* center = fp.find_region(center_region_id);
  if (center == nullptr)
    throw ValidationError("build_graph: unknown region '" + center_region_id + "'");
  if (center->label != plan::SemanticLabel::Table && center->label != plan::SemanticLabel::Wall)
    throw ValidationError("build_graph: center region '" + center_region_id +
                          "' must be a table or wall");
  SceneGraph g;
  g.center = {center->id, center->label, affordance_of(center->label),
              axis_aligned_obb(center->shape)};
  for (const auto& r : fp.regions) {
    if (r.id == center->id) continue;
    if (r.label != plan::SemanticLabel::Chair && r.label != plan::SemanticLabel::Obstacle)
      continue;
    const double gap = geom::min_boundary_distance(center->shape, r.shape);
    if (gap > kPersonalArea) continue;
    const Obb obb = axis_aligned_obb(r.shape);
    GraphEdge e;
    e.from = center->id;
    e.to = r.id;
    e.gap = gap;
    e.direction = dominant_direction(obb.center - g.center.obb.center);
    e.neighbor_affordance = affordance_of(r.label);
    g.edges.push_back(std::move(e));
  }
  return g;
}

SceneGraph rotated(const SceneGraph& g, int quarter_turns) {
  SceneGraph out = g;
  for (auto& e : out.edges) e.direction = rotated(e.direction, quarter_turns);
  return out;
}

namespace {

enum class DirClass { None, Sittable, Obstacle };

// Dominant neighbor class per direction: the nearest neighbor wins; equal
// gaps resolve sittable before obstacle.
std::array<DirClass, 4> direction_classes(const SceneGraph& g) {
  std::array<DirClass, 4> cls{DirClass::None, DirClass::None, DirClass::None, DirClass::None};
  std::array<double, 4> best_gap{1e30, 1e30, 1e30, 1e30};
  for (const auto& e : g.edges) {
    const int d = static_cast<int>(e.direction);
    const DirClass c =
        e.neighbor_affordance == Affordance::Sittable ? DirClass::Sittable : DirClass::Obstacle;
    if (e.gap < best_gap[d] ||
        (e.gap == best_gap[d] && c == DirClass::Sittable && cls[d] == DirClass::Obstacle)) {
      best_gap[d] = e.gap;
      cls[d] = c;
    }
  }
  return cls;
}

}  // namespace

double match_score(const SceneGraph& host, const SceneGraph& client) {
  const auto a = direction_classes(host);
  const auto b = direction_classes(client);
  double score = 0.0;
  for (int d = 0; d < 4; ++d)
    if (a[d] == b[d]) score += 0.25;
  return score;
}

geom::Segment wall_inner_face(const plan::Floorplan& fp, const plan::LabeledRegion& wall) {
  const geom::Bounds b = wall.shape.bounds();
  const bool horizontal = b.width() >= b.height();
  geom::Segment lo, hi;
  if (horizontal) {
    lo = {{b.min.x, b.min.y}, {b.max.x, b.min.y}};
    hi = {{b.min.x, b.max.y}, {b.max.x, b.max.y}};
  } else {
    lo = {{b.min.x, b.min.y}, {b.min.x, b.max.y}};
    hi = {{b.max.x, b.min.y}, {b.max.x, b.max.y}};
  }
  // The inner face is the long side facing the room: probe a point just off
  // each face and prefer the one inside the boundary and off the wall ring.
  auto probe_score = [&](const geom::Segment& face, double sign) {
    const geom::Point2 dir = face.direction();
    const geom::Point2 normal{-dir.y * sign, dir.x * sign};
    const geom::Point2 p = face.midpoint() + 0.15 * normal;
    if (!geom::point_in_polygon(p, fp.boundary)) return -1.0;
    for (const auto& r : fp.regions)
      if (r.label == plan::SemanticLabel::Wall && geom::point_in_polygon(p, r.shape)) return 0.0;
    return 1.0;
  };
  const double slo = probe_score(lo, horizontal ? 1.0 : -1.0);
  const double shi = probe_score(hi, horizontal ? -1.0 : 1.0);
  if (shi > slo) return hi;
  return lo;
}

double wall_front_floor_area(const plan::Floorplan& fp, const plan::LabeledRegion& wall) {
  const geom::Segment face = wall_inner_face(fp, wall);
  const geom::Point2 dir = face.direction();
  geom::Point2 normal{-dir.y, dir.x};
  // Orient the band into the room.
  geom::Point2 probe = face.midpoint() + 0.15 * normal;
  if (!geom::point_in_polygon(probe, fp.boundary)) normal = {-normal.x, -normal.y};
  geom::Polygon band{{face.a, face.b, face.b + kWallBandDepth * normal,
                      face.a + kWallBandDepth * normal}};
  if (!geom::is_ccw(band)) std::reverse(band.pts.begin(), band.pts.end());
  const plan::SemanticMap m = plan::semantic_map(fp, plan::Context::Wall);
  return geom::intersect(geom::PolygonSet{band}, m.movable_floor).area();
}

namespace {

const plan::LabeledRegion* pick_largest(const std::vector<const plan::LabeledRegion*>& regions) {
  const plan::LabeledRegion* best = nullptr;
  for (const auto* r : regions) {
    if (best == nullptr || r->shape.area() > best->shape.area() ||
        (r->shape.area() == best->shape.area() && r->id < best->id))
      best = r;
  }
  return best;
}

TargetSelection select_host_table(const plan::Floorplan& host, const std::string& host_target_id) {
  if (!host_target_id.empty()) {
    const plan::LabeledRegion* r = host.find_region(host_target_id);
    if (r == nullptr || r->label != plan::SemanticLabel::Table)
      throw TargetNotFoundError("host target '" + host_target_id + "' is not a table in '" +
                                host.id + "'");
    return {r->id, 0, 1.0};
  }
  const auto tables = host.regions_with(plan::SemanticLabel::Table);
  const plan::LabeledRegion* best = pick_largest(tables);
  if (best == nullptr)
    throw TargetNotFoundError("no table in host plan '" + host.id + "'");
  return {best->id, 0, 1.0};
}

TargetSelection select_best_wall(const plan::Floorplan& fp) {
  const auto walls = fp.regions_with(plan::SemanticLabel::Wall);
  if (walls.empty()) throw TargetNotFoundError("no wall in plan '" + fp.id + "'");
  const plan::LabeledRegion* best = nullptr;
  double best_area = -1.0;
  for (const auto* w : walls) {
    const double a = wall_front_floor_area(fp, *w);
    if (a > best_area || (a == best_area && best != nullptr && w->id < best->id)) {
      best_area = a;
      best = w;
    }
  }
  return {best->id, 0, 1.0};
}

int wall_alignment_rotation(const plan::Floorplan& host, const plan::LabeledRegion& host_wall,
                            const plan::Floorplan& client, const plan::LabeledRegion& client_wall) {
  auto face_normal = [](const plan::Floorplan& fp, const plan::LabeledRegion& w) {
    const geom::Segment face = wall_inner_face(fp, w);
    const geom::Point2 dir = face.direction();
    geom::Point2 n{-dir.y, dir.x};
    const geom::Point2 probe = face.midpoint() + 0.15 * n;
    if (!geom::point_in_polygon(probe, fp.boundary)) n = {-n.x, -n.y};
    return n;
  };
  const geom::Point2 hn = face_normal(host, host_wall);
  const geom::Point2 cn = face_normal(client, client_wall);
  int best_q = 0;
  double best_dot = -2.0;
  for (int q = 0; q < 4; ++q) {
    const double a = q * geom::kPi / 2.0;
    const geom::Point2 rn{std::cos(a) * cn.x - std::sin(a) * cn.y,
                          std::sin(a) * cn.x + std::cos(a) * cn.y};
    const double d = geom::dot(rn, hn);
    if (d > best_dot + 1e-12) {
      best_dot = d;
      best_q = q;
    }
  }
  return best_q;
}

}  // namespace

TargetPair select_target(const plan::Floorplan& host, const plan::Floorplan& client,
                         plan::Context context, const std::string& host_target_id) {
  TargetPair out;
  switch (context) {
    case plan::Context::Table: {
      out.host = select_host_table(host, host_target_id);
      const SceneGraph host_graph = build_graph(host, out.host.region_id);
      const auto tables = client.regions_with(plan::SemanticLabel::Table);
      if (tables.empty()) throw TargetNotFoundError("no table in client plan '" + client.id + "'");
      const plan::LabeledRegion* best = nullptr;
      int best_q = 0;
      double best_score = -1.0;
      for (const auto* t : tables) {
        const SceneGraph g = build_graph(client, t->id);
        for (int q = 0; q < 4; ++q) {
          const double s = match_score(host_graph, rotated(g, q));
          // Ties: larger target area, then lexicographic id, then smaller turn.
          bool better = s > best_score;
          if (!better && s == best_score && best != nullptr) {
            if (t->shape.area() > best->shape.area()) better = true;
            else if (t->shape.area() == best->shape.area() && t->id < best->id) better = true;
          }
          if (better) {
            best_score = s;
            best = t;
            best_q = q;
          }
        }
      }
      out.client = {best->id, best_q, best_score};
      return out;
    }
    case plan::Context::Wall: {
      out.host = host_target_id.empty() ? select_best_wall(host)
                                        : TargetSelection{host_target_id, 0, 1.0};
      const plan::LabeledRegion* hw = host.find_region(out.host.region_id);
      if (hw == nullptr || hw->label != plan::SemanticLabel::Wall)
        throw TargetNotFoundError("host target '" + out.host.region_id + "' is not a wall in '" +
                                  host.id + "'");
      out.client = select_best_wall(client);
      const plan::LabeledRegion* cw = client.find_region(out.client.region_id);
      out.client.rotation_quarters = wall_alignment_rotation(host, *hw, client, *cw);
      return out;
    }
    case plan::Context::Floor: {
      out.host = {kMovableFloorTarget, 0, 1.0};
      out.client = {kMovableFloorTarget, 0, 1.0};
      return out;
    }
  }
  throw ValidationError("select_target: bad context");
}

}  // namespace mutualspace::scene
