#include "mutualspace/subspace.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "mutualspace/errors.hpp"

namespace mutualspace::subspace {

namespace {

constexpr double kCollisionArea = 1e-4;  // touching along edges is not a collision

struct Frame {
  geom::Point2 origin;
  geom::Point2 u, v;
  geom::Point2 at(double du, double dv) const {
    return {origin.x + du * u.x + dv * v.x, origin.y + du * u.y + dv * v.y};
  }
};

geom::Polygon frame_rect(const Frame& f, double u0, double u1, double v0, double v1) {
  return geom::Polygon{{f.at(u0, v0), f.at(u1, v0), f.at(u1, v1), f.at(u0, v1)}};
}

bool marker_clear(const geom::Polygon& marker, const geom::PolygonSet& blocked,
                  const geom::PolygonSet& footprint) {
  const geom::PolygonSet m{marker};
  if (geom::intersect(m, blocked).area() > kCollisionArea) return false;
  if (geom::subtract(m, footprint).area() > kCollisionArea) return false;
  return true;
}

struct SweepResult {
  SideSweep sides[4];
  geom::PolygonSet region;
  geom::PolygonSet obstacle_region;
  double interactable = 0.0;
  double obstacle = 0.0;
};

SweepResult run_sweeps(const Frame& f, const geom::PolygonSet& blocked,
                       const geom::PolygonSet& footprint, const geom::PolygonSet& obstacle_set,
                       double l_m, const SweepParams& p) {
  SweepResult r;
  const geom::Bounds fb = footprint.bounds();
  const int k_max =
      static_cast<int>(std::ceil(std::max(fb.width(), fb.height()) / p.marker_step)) + 2;
  // Sides: +u (right), -u (left), +v (up), -v (down).
  const double dirs[4][2] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  for (int side = 0; side < 4; ++side) {
    int k = 0;
    for (int next = 1; next <= k_max; ++next) {
      const double inner = p.marker_start - p.marker_thickness + next * p.marker_step;
      const double outer = p.marker_start + next * p.marker_step;
      geom::Polygon marker;
      if (dirs[side][0] != 0.0) {
        const double s = dirs[side][0];
        marker = frame_rect(f, std::min(s * inner, s * outer), std::max(s * inner, s * outer),
                            -0.5 * l_m, 0.5 * l_m);
      } else {
        const double s = dirs[side][1];
        marker = frame_rect(f, -0.5 * l_m, 0.5 * l_m, std::min(s * inner, s * outer),
                            std::max(s * inner, s * outer));
      }
      if (!geom::is_ccw(marker)) std::reverse(marker.pts.begin(), marker.pts.end());
      if (!marker_clear(marker, blocked, footprint)) break;
      k = next;
    }
    r.sides[side].travel = k * p.marker_step;
    r.sides[side].extent = p.marker_start + r.sides[side].travel;
  }
  geom::Polygon rect = frame_rect(f, -r.sides[1].extent, r.sides[0].extent, -r.sides[3].extent,
                                  r.sides[2].extent);
  if (!geom::is_ccw(rect)) std::reverse(rect.pts.begin(), rect.pts.end());
  r.region = geom::intersect(geom::PolygonSet{rect}, footprint);
  r.obstacle_region = geom::intersect(r.region, obstacle_set);
  r.obstacle = r.obstacle_region.area();
  r.interactable = r.region.area() - r.obstacle;
  return r;
}

}  // namespace

Subspace extract_subspace(const match::OverlayClasses& overlay,
                          const geom::PolygonSet& footprint, geom::Point2 position,
                          double frame_angle, const SweepParams& params) {
  Frame f;
  f.origin = position;
  f.u = {std::cos(frame_angle), std::sin(frame_angle)};
  f.v = {-f.u.y, f.u.x};

  const geom::PolygonSet& blocked = overlay.unmatched;
  const geom::PolygonSet obstacle_set = geom::unite(overlay.matched_obstacle, overlay.unmatched);

  Subspace out;
  out.position = position;
  out.frame_angle = frame_angle;

  SweepResult best = run_sweeps(f, blocked, footprint, obstacle_set, params.marker_initial_length,
                                params);
  double best_l = params.marker_initial_length;
  out.widths_tried.emplace_back(best_l, best.obstacle);

  if (best.interactable >= params.a_min) {
    // Enough interactable area: widen the marker to shave off unmatched
    // pockets, keeping the smallest-obstacle result that still reaches a_min.
    for (double l = params.marker_initial_length + 0.1; l <= params.marker_max_length + 1e-9;
         l += 0.1) {
      if (best.obstacle <= 1e-12) break;  // nothing left to shave
      SweepResult r = run_sweeps(f, blocked, footprint, obstacle_set, l, params);
      if (r.interactable < params.a_min) break;
      out.widths_tried.emplace_back(l, r.obstacle);
      if (r.obstacle < best.obstacle) {
        best = r;
        best_l = l;
      }
    }
  }

  out.region = best.region;
  out.obstacle_region = best.obstacle_region;
  out.interactable_area = best.interactable;
  out.obstacle_area = best.obstacle;
  out.marker_length = best_l;
  for (int i = 0; i < 4; ++i) out.sides[i] = best.sides[i];
  return out;
}

std::vector<geom::Segment> boundary_walls(const geom::PolygonSet& region, plan::Context context,
                                          const geom::Polygon& target_table,
                                          const geom::Segment& target_face) {
  constexpr double kFlush = 0.05;
  std::vector<geom::Segment> walls;
  for (const auto& poly : region.parts) {
    for (std::size_t i = 0; i < poly.pts.size(); ++i) {
      const geom::Segment e = poly.edge(i);
      bool shared = false;
      if (context == plan::Context::Table && !target_table.pts.empty()) {
        shared = geom::distance_to_boundary(e.midpoint(), target_table) < kFlush &&
                 geom::distance_to_boundary(e.a, target_table) < 2.0 * kFlush &&
                 geom::distance_to_boundary(e.b, target_table) < 2.0 * kFlush;
      } else if (context == plan::Context::Wall) {
        shared = geom::distance_point_segment(e.midpoint(), target_face) < kFlush + 0.45;
        // A subspace edge "faces" the wall when parallel and within the
        // user offset band of the target face.
        if (shared) {
          const geom::Point2 d1 = e.direction();
          const geom::Point2 d2 = target_face.direction();
          shared = std::abs(geom::dot(d1, d2)) > 0.98480775301220806;
        }
      }
      if (!shared) walls.push_back(e);
    }
  }
  return walls;
}

MutualSpace allocate(const plan::Floorplan& host, plan::Context context,
                     const std::string& method, const geom::Polygon& host_target_table,
                     const geom::Segment& host_target_face,
                     std::vector<ClientAllocation> clients, const place::Placement& placement,
                     int n_hosts) {
  MutualSpace ms;
  ms.method = method;
  ms.context = context;
  ms.host = host;
  ms.success = placement.success;
  for (auto& c : clients)
    c.walls = boundary_walls(c.subspace.region, context, host_target_table, host_target_face);
  ms.clients = std::move(clients);
  if (placement.success) {
    for (std::size_t i = 0; i < placement.positions.size(); ++i) {
      MutualSpace::User u;
      if (static_cast<int>(i) < n_hosts)
        u.label = "H" + std::to_string(i + 1);
      else
        u.label = "C" + std::to_string(i + 1 - n_hosts);
      u.position = placement.positions[i];
      ms.users.push_back(std::move(u));
    }
  }
  return ms;
}

namespace {

using nlohmann::json;

json point_json(geom::Point2 p) { return json::array({p.x, p.y}); }

geom::Point2 point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json polyset_json(const geom::PolygonSet& s) {
  json out = json::array();
  for (const auto& poly : s.parts) {
    json ring = json::array();
    for (const auto& p : poly.pts) ring.push_back(point_json(p));
    out.push_back(std::move(ring));
  }
  return out;
}

geom::PolygonSet polyset_from(const json& j) {
  geom::PolygonSet s;
  for (const auto& ring : j) {
    geom::Polygon poly;
    for (const auto& p : ring) poly.pts.push_back(point_from(p));
    s.parts.push_back(std::move(poly));
  }
  return s;
}

}  // namespace

json to_json(const MutualSpace& ms) {
  json j;
  j["method"] = ms.method;
  j["context"] = plan::to_string(ms.context);
  j["success"] = ms.success;
  j["host"] = plan::to_json(ms.host);
  json users = json::array();
  for (const auto& u : ms.users)
    users.push_back(json{{"label", u.label}, {"position", point_json(u.position)}});
  j["users"] = std::move(users);
  json clients = json::array();
  for (const auto& c : ms.clients) {
    json cj;
    cj["id"] = c.client_id;
    cj["pose"] = json{{"tx", c.pose.tx}, {"ty", c.pose.ty}, {"theta", c.pose.theta}};
    cj["subspace"] = polyset_json(c.subspace.region);
    cj["obstacle_region"] = polyset_json(c.subspace.obstacle_region);
    json walls = json::array();
    for (const auto& w : c.walls) walls.push_back(json::array({point_json(w.a), point_json(w.b)}));
    cj["walls"] = std::move(walls);
    cj["interactable_area"] = c.subspace.interactable_area;
    cj["obstacle_area"] = c.subspace.obstacle_area;
    clients.push_back(std::move(cj));
  }
  j["clients"] = std::move(clients);
  return j;
}

MutualSpace mutual_space_from_json(const json& j) {
  MutualSpace ms;
  try {
    ms.method = j.at("method").get<std::string>();
    ms.context = plan::context_from_string(j.at("context").get<std::string>());
    ms.success = j.at("success").get<bool>();
    ms.host = plan::floorplan_from_json(j.at("host"));
    for (const auto& u : j.at("users")) {
      MutualSpace::User user;
      user.label = u.at("label").get<std::string>();
      user.position = point_from(u.at("position"));
      ms.users.push_back(std::move(user));
    }
    for (const auto& c : j.at("clients")) {
      ClientAllocation ca;
      ca.client_id = c.at("id").get<std::string>();
      const auto& pj = c.at("pose");
      ca.pose = {pj.at("tx").get<double>(), pj.at("ty").get<double>(),
                 pj.at("theta").get<double>()};
      ca.subspace.region = polyset_from(c.at("subspace"));
      ca.subspace.obstacle_region = polyset_from(c.at("obstacle_region"));
      for (const auto& w : c.at("walls"))
        ca.walls.push_back({point_from(w.at(0)), point_from(w.at(1))});
      ca.subspace.interactable_area = c.at("interactable_area").get<double>();
      ca.subspace.obstacle_area = c.at("obstacle_area").get<double>();
      ca.subspace.owner = ca.client_id;
      ms.clients.push_back(std::move(ca));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("mutual-space JSON: ") + e.what());
  }
  return ms;
}

}  // namespace mutualspace::subspace
