#include "mutualspace/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mutualspace::place {

namespace {

geom::Polygon personal_square(geom::Point2 center, double diameter, double angle) {
  const double h = 0.5 * diameter;
  const double c = std::cos(angle), s = std::sin(angle);
  auto corner = [&](double u, double v) {
    return geom::Point2{center.x + c * u - s * v, center.y + s * u + c * v};
  };
  return geom::Polygon{{corner(-h, -h), corner(h, -h), corner(h, h), corner(-h, h)}};
}

geom::Segment offset_line(const geom::Segment& face, const geom::PolygonSet& room, double off) {
  const geom::Point2 dir = face.direction();
  geom::Point2 n{-dir.y, dir.x};
  const geom::Point2 probe = face.midpoint() + 0.15 * n;
  if (!geom::contains(room, probe)) n = {-n.x, -n.y};
  return {face.a + off * n, face.b + off * n};
}

}  // namespace

double target_distance(const UserClassGeometry& g, geom::Point2 p) {
  switch (g.target_kind) {
    case UserClassGeometry::TargetKind::PolyBoundary:
      return geom::distance_to_boundary(p, g.target_poly);
    case UserClassGeometry::TargetKind::Face:
      return geom::distance_point_segment(p, g.target_face);
    case UserClassGeometry::TargetKind::Point:
      return geom::distance(p, g.target_point);
  }
  return 0.0;
}

std::vector<UserClassGeometry> build_user_geometry(const PlacementInputs& in,
                                                   const PlacementConfig& cfg) {
  std::vector<UserClassGeometry> out;
  const plan::SemanticMap& host = *in.host_map;
  const bool table_ctx = in.context == plan::Context::Table;

  // Host users live in the host's own map.
  UserClassGeometry hg;
  hg.frame_angle = 0.0;
  hg.stand_region = host.footprint;
  hg.forbidden = geom::unite(host.table, host.wall);
  hg.forbidden = geom::unite(hg.forbidden, host.obstacle);
  if (!table_ctx) hg.forbidden = geom::unite(hg.forbidden, host.chair);
  if (table_ctx) hg.sittable = host.chair;
  switch (in.context) {
    case plan::Context::Table:
      hg.target_kind = UserClassGeometry::TargetKind::PolyBoundary;
      hg.target_poly = in.host_target_table;
      hg.sample_kind = UserClassGeometry::SampleKind::Ring;
      hg.ring_source = in.host_target_table;
      break;
    case plan::Context::Wall:
      hg.target_kind = UserClassGeometry::TargetKind::Face;
      hg.target_face = in.host_target_face;
      hg.sample_kind = UserClassGeometry::SampleKind::Line;
      hg.line_source = offset_line(in.host_target_face, host.footprint, cfg.surface_offset);
      break;
    case plan::Context::Floor:
      hg.target_kind = UserClassGeometry::TargetKind::Point;
      hg.target_point = host.movable_floor.centroid();
      hg.sample_kind = UserClassGeometry::SampleKind::Grid;
      hg.grid_region = host.movable_floor;
      break;
  }
  out.push_back(std::move(hg));

  for (const auto& cl : in.clients) {
    const match::OverlayClasses& ov = *cl.overlay;
    UserClassGeometry g;
    g.frame_angle = cl.pose.theta;
    // Clients can only use their own physical space inside the host room.
    g.stand_region = geom::intersect(ov.client_footprint, host.footprint);
    geom::PolygonSet own = geom::unite(cl.map->table, cl.map->wall);
    own = geom::unite(own, cl.map->obstacle);
    if (!table_ctx) own = geom::unite(own, cl.map->chair);
    g.forbidden = geom::unite(geom::transformed(own, cl.pose), ov.unmatched);
    if (table_ctx) {
      g.sittable = geom::transformed(cl.map->chair, cl.pose);
      g.forbidden = geom::subtract(g.forbidden, g.sittable);
    }
    switch (in.context) {
      case plan::Context::Table: {
        const geom::Polygon moved_table = geom::transformed(cl.target_table, cl.pose);
        g.target_kind = UserClassGeometry::TargetKind::PolyBoundary;
        g.target_poly = moved_table;
        g.sample_kind = UserClassGeometry::SampleKind::Ring;
        g.ring_source = moved_table;
        break;
      }
      case plan::Context::Wall: {
        const geom::Segment moved_face{cl.pose.apply(cl.target_face.a),
                                       cl.pose.apply(cl.target_face.b)};
        g.target_kind = UserClassGeometry::TargetKind::Face;
        g.target_face = moved_face;
        g.sample_kind = UserClassGeometry::SampleKind::Line;
        g.line_source = offset_line(moved_face, ov.client_footprint, cfg.surface_offset);
        break;
      }
      case plan::Context::Floor: {
        g.target_kind = UserClassGeometry::TargetKind::Point;
        g.target_point = ov.matched_walkable.empty() ? g.stand_region.centroid()
                                                     : ov.matched_walkable.centroid();
        g.sample_kind = UserClassGeometry::SampleKind::Grid;
        g.grid_region = ov.matched_walkable;
        break;
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

std::vector<geom::Point2> ring_points(const geom::Polygon& source, double offset, double d_step) {
  if (source.pts.size() < 3) return {};
  const geom::Polygon path = geom::offset_path(source, offset);
  if (path.pts.size() < 3) return {};
  const double total = path.perimeter();
  const int n = std::max(1, static_cast<int>(std::floor(total / d_step)));
  std::vector<geom::Point2> pts;
  pts.reserve(n);
  double want = 0.0;
  double walked = 0.0;
  std::size_t edge = 0;
  double into = 0.0;  // distance consumed on the current edge
  for (int i = 0; i < n; ++i) {
    want = i * total / n;
    while (edge < path.pts.size()) {
      const geom::Segment e = path.edge(edge);
      const double len = e.length();
      if (walked + (len - into) >= want || edge == path.pts.size() - 1) {
        const double t = len > 0.0 ? std::min(1.0, (into + (want - walked)) / len) : 0.0;
        pts.push_back(e.a + t * (e.b - e.a));
        into += want - walked;
        walked = want;
        break;
      }
      walked += len - into;
      into = 0.0;
      ++edge;
    }
  }
  return pts;
}

std::vector<geom::Point2> line_points(const geom::Segment& line, double d_step) {
  const double len = line.length();
  const geom::Point2 dir = line.direction();
  const int n = static_cast<int>(std::floor(len / d_step + 1e-9)) + 1;
  std::vector<geom::Point2> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double s = std::min(i * d_step, len);
    pts.push_back(line.a + s * dir);
  }
  return pts;
}

std::vector<geom::Point2> grid_points(const geom::PolygonSet& region, double d_step) {
  std::vector<geom::Point2> pts;
  if (region.empty()) return pts;
  const geom::Bounds b = region.bounds();
  const int nx = static_cast<int>(std::floor(b.width() / d_step + 1e-9));
  const int ny = static_cast<int>(std::floor(b.height() / d_step + 1e-9));
  for (int iy = 0; iy <= ny; ++iy) {
    for (int ix = 0; ix <= nx; ++ix) {
      const geom::Point2 p{b.min.x + ix * d_step, b.min.y + iy * d_step};
      if (geom::contains(region, p) || geom::distance_to_boundary(p, region) <= 1e-9)
        pts.push_back(p);
    }
  }
  return pts;
}

}  // namespace

std::vector<Candidate> sample_class(const UserClassGeometry& g, int owner,
                                    const PlacementConfig& cfg) {
  std::vector<geom::Point2> pts;
  switch (g.sample_kind) {
    case UserClassGeometry::SampleKind::Ring:
      pts = ring_points(g.ring_source, cfg.surface_offset, cfg.d_step);
      break;
    case UserClassGeometry::SampleKind::Line:
      pts = line_points(g.line_source, cfg.d_step);
      break;
    case UserClassGeometry::SampleKind::Grid:
      pts = grid_points(g.grid_region, cfg.d_step);
      break;
  }
  std::vector<Candidate> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    if (geom::contains(g.forbidden, p)) continue;
    Candidate c;
    c.position = p;
    c.owner = owner;
    c.on_sittable = geom::contains(g.sittable, p);
    c.target_dist = target_distance(g, p);
    out.push_back(c);
  }
  return out;
}

CandidateSets sample_candidates(std::span<const UserClassGeometry> geoms,
                                const PlacementConfig& cfg) {
  CandidateSets sets;
  sets.reserve(geoms.size());
  for (std::size_t i = 0; i < geoms.size(); ++i)
    sets.push_back(sample_class(geoms[i], static_cast<int>(i), cfg));
  return sets;
}

std::vector<Candidate> filter_class(std::vector<Candidate> cands, const UserClassGeometry& g,
                                    const PlacementConfig& cfg) {
  const double radius = 0.5 * cfg.personal_diameter;
  std::vector<Candidate> out;
  out.reserve(cands.size());
  for (auto& c : cands) {
    if (!geom::clearance_ok(c.position, radius, g.forbidden)) continue;
    const geom::Polygon square =
        personal_square(c.position, cfg.personal_diameter, g.frame_angle);
    const double outside =
        geom::subtract(geom::PolygonSet{square}, g.stand_region).area();
    if (outside >= 1e-4) continue;
    out.push_back(c);
  }
  return out;
}

CandidateSets filter_candidates(const CandidateSets& sets,
                                std::span<const UserClassGeometry> geoms,
                                const PlacementConfig& cfg) {
  CandidateSets out;
  out.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    out.push_back(filter_class(sets[i], geoms[i], cfg));
  return out;
}

namespace {

struct SearchProblem {
  std::vector<const std::vector<Candidate>*> user_sets;  // per user
  std::vector<int> user_class;
  double min_gap2 = 0.36;
};

bool feasible_pair(const Candidate& a, const Candidate& b, double min_gap2) {
  const double dx = a.position.x - b.position.x;
  const double dy = a.position.y - b.position.y;
  return dx * dx + dy * dy >= min_gap2;
}

struct DfsState {
  const SearchProblem* prob;
  std::vector<int> assignment;
  std::vector<int> order;   // candidate indices sorted by target distance
  long nodes = 0;
  long node_cap = 2000000;
  bool found = false;
  std::vector<int> best;
};

bool dfs(DfsState& st, std::size_t u) {
  const SearchProblem& p = *st.prob;
  if (u == p.user_sets.size()) {
    st.best = st.assignment;
    st.found = true;
    return true;
  }
  if (++st.nodes > st.node_cap) return false;
  const auto& cands = *p.user_sets[u];
  for (std::size_t oi = 0; oi < cands.size(); ++oi) {
    const int ci = st.order[static_cast<std::size_t>(u) * 10000 + oi];
    // Same-class users are interchangeable; force increasing indices.
    bool ok = true;
    for (std::size_t v = 0; v < u && ok; ++v) {
      if (p.user_class[v] == p.user_class[u] && p.user_sets[v] == p.user_sets[u] &&
          st.assignment[v] >= ci)
        ok = false;
      else if (!feasible_pair((*p.user_sets[v])[st.assignment[v]], cands[ci], p.min_gap2))
        ok = false;
    }
    if (!ok) continue;
    st.assignment[u] = ci;
    if (dfs(st, u + 1)) return true;
    if (st.nodes > st.node_cap) return false;
  }
  return false;
}

double assignment_objective(const SearchProblem& p, const std::vector<int>& a) {
  double s = 0.0;
  for (std::size_t u = 0; u < a.size(); ++u) s += (*p.user_sets[u])[a[u]].target_dist;
  return s;
}

bool move_feasible(const SearchProblem& p, const std::vector<int>& a, std::size_t u, int ci,
                   std::size_t skip = static_cast<std::size_t>(-1)) {
  const Candidate& c = (*p.user_sets[u])[ci];
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (v == u || v == skip) continue;
    if (!feasible_pair((*p.user_sets[v])[a[v]], c, p.min_gap2)) return false;
  }
  return true;
}

// Single-user moves plus pairwise joint moves until a fixed point.
void local_improve(const SearchProblem& p, std::vector<int>& a) {
  const std::size_t n = a.size();
  for (int iter = 0; iter < 60; ++iter) {
    bool improved = false;
    for (std::size_t u = 0; u < n; ++u) {
      const auto& cands = *p.user_sets[u];
      double best_d = cands[a[u]].target_dist;
      int best_i = a[u];
      for (std::size_t ci = 0; ci < cands.size(); ++ci) {
        if (cands[ci].target_dist >= best_d) continue;
        if (move_feasible(p, a, u, static_cast<int>(ci))) {
          best_d = cands[ci].target_dist;
          best_i = static_cast<int>(ci);
        }
      }
      if (best_i != a[u]) {
        a[u] = best_i;
        improved = true;
      }
    }
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        const auto& cu = *p.user_sets[u];
        const auto& cv = *p.user_sets[v];
        if (cu.size() * cv.size() > 40000) continue;
        double best = cu[a[u]].target_dist + cv[a[v]].target_dist;
        int bu = a[u], bv = a[v];
        for (std::size_t i = 0; i < cu.size(); ++i) {
          if (cu[i].target_dist >= best) continue;
          if (!move_feasible(p, a, u, static_cast<int>(i), v)) continue;
          for (std::size_t j = 0; j < cv.size(); ++j) {
            const double d = cu[i].target_dist + cv[j].target_dist;
            if (d >= best) continue;
            if (!feasible_pair(cu[i], cv[j], p.min_gap2)) continue;
            if (!move_feasible(p, a, v, static_cast<int>(j), u)) continue;
            best = d;
            bu = static_cast<int>(i);
            bv = static_cast<int>(j);
          }
        }
        if (bu != a[u] || bv != a[v]) {
          a[u] = bu;
          a[v] = bv;
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
}

bool solve_sets(const std::vector<const std::vector<Candidate>*>& class_sets,
                const PlacementConfig& cfg, std::vector<int>& out_assignment,
                std::vector<std::size_t>& out_users) {
  const std::size_t n_users = static_cast<std::size_t>(cfg.n_hosts) + class_sets.size() - 1;
  SearchProblem p;
  p.min_gap2 = cfg.personal_diameter * cfg.personal_diameter;
  std::vector<std::size_t> users;  // user -> class
  for (int i = 0; i < cfg.n_hosts; ++i) users.push_back(0);
  for (std::size_t k = 1; k < class_sets.size(); ++k) users.push_back(k);
  // Scarcity order: classes with fewer candidates place first.
  std::vector<std::size_t> order(users.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return class_sets[users[a]]->size() < class_sets[users[b]]->size();
  });
  for (std::size_t u : order) {
    p.user_sets.push_back(class_sets[users[u]]);
    p.user_class.push_back(static_cast<int>(users[u]));
  }
  for (const auto* s : p.user_sets)
    if (s->empty()) return false;

  DfsState st;
  st.prob = &p;
  st.assignment.assign(n_users, -1);
  st.order.assign(n_users * 10000, 0);
  for (std::size_t u = 0; u < n_users; ++u) {
    std::vector<int> idx(p.user_sets[u]->size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return (*p.user_sets[u])[a].target_dist < (*p.user_sets[u])[b].target_dist;
    });
    for (std::size_t i = 0; i < idx.size(); ++i) st.order[u * 10000 + i] = idx[i];
  }
  if (!dfs(st, 0)) return false;
  local_improve(p, st.best);

  // Undo the scarcity permutation.
  out_assignment.assign(n_users, -1);
  out_users.assign(n_users, 0);
  for (std::size_t i = 0; i < n_users; ++i) {
    out_assignment[order[i]] = st.best[i];
    out_users[order[i]] = users[order[i]];
  }
  return true;
}

}  // namespace

Placement select_positions(const CandidateSets& sets, const PlacementConfig& cfg,
                           std::span<const UserClassGeometry> geoms) {
  Placement result;
  if (sets.empty() || cfg.n_hosts < 1) return result;
  const std::size_t n_users = static_cast<std::size_t>(cfg.n_hosts) + sets.size() - 1;

  std::vector<const std::vector<Candidate>*> full;
  for (const auto& s : sets) full.push_back(&s);

  // Candidate pruning: re-filter with an inflated personal diameter, backing
  // off until every class keeps enough candidates or inflation reaches 1.
  CandidateSets pruned_storage;
  std::vector<const std::vector<Candidate>*> active = full;
  if (!geoms.empty()) {
    const std::size_t need =
        std::max<std::size_t>(10, n_users * 3);
    double inflation = 1.5;
    while (inflation > 1.0 + 1e-12) {
      CandidateSets trial;
      bool enough = true;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        std::vector<Candidate> kept;
        const double radius = 0.5 * cfg.personal_diameter * inflation;
        for (const auto& c : sets[i])
          if (geom::clearance_ok(c.position, radius, geoms[i].forbidden)) kept.push_back(c);
        if (kept.size() < std::min(need, sets[i].size())) enough = false;
        trial.push_back(std::move(kept));
      }
      if (enough) {
        pruned_storage = std::move(trial);
        break;
      }
      inflation *= 0.9;
    }
    if (!pruned_storage.empty()) {
      active.clear();
      for (const auto& s : pruned_storage) active.push_back(&s);
    }
  }

  std::vector<int> assignment;
  std::vector<std::size_t> user_class;
  bool ok = solve_sets(active, cfg, assignment, user_class);
  if (!ok && active != full) {
    ok = solve_sets(full, cfg, assignment, user_class);
    if (ok) active = full;
  }
  if (!ok) return result;

  result.success = true;
  result.min_pairwise_gap = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < n_users; ++u) {
    const Candidate& c = (*active[user_class[u]])[assignment[u]];
    result.positions.push_back(c.position);
    result.owners.push_back(static_cast<int>(user_class[u]));
    result.objective += c.target_dist;
  }
  for (std::size_t i = 0; i < n_users; ++i)
    for (std::size_t j = i + 1; j < n_users; ++j)
      result.min_pairwise_gap =
          std::min(result.min_pairwise_gap, geom::distance(result.positions[i], result.positions[j]));
  return result;
}

}  // namespace mutualspace::place
