#pragma once

// Test-only oracles, independent of the implementation paths they check:
// dense boundary sampling for alignment lengths, label grids computed from
// raw region polygons for the psi terms, and exhaustive search for joint
// placement. Kept brute-force on purpose.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mutualspace/floorplan.hpp"
#include "mutualspace/geometry.hpp"
#include "mutualspace/optimizer.hpp"
#include "mutualspace/placement.hpp"

namespace oracles {

namespace geom = mutualspace::geom;
namespace plan = mutualspace::plan;
namespace place = mutualspace::place;

inline geom::Polygon random_star_polygon(mutualspace::opt::SplitMix64& rng, double cx, double cy,
                                         int n, double rmin, double rmax) {
  std::vector<double> angles(n);
  for (auto& a : angles) a = rng.uniform(0.0, 2.0 * geom::kPi);
  std::sort(angles.begin(), angles.end());
  // Degenerate (nearly equal) angles make sliver edges; nudge them apart.
  for (int i = 1; i < n; ++i)
    if (angles[i] - angles[i - 1] < 0.05) angles[i] = angles[i - 1] + 0.05;
  geom::Polygon p;
  for (double a : angles) {
    const double r = rng.uniform(rmin, rmax);
    p.pts.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  return p;
}

// 1 mm-sampled boundary alignment with the perpendicular-projection rule.
inline double aligned_length_sampled(const geom::Polygon& a, const geom::Polygon& b, double eps,
                                     double step = 0.001) {
  const double cos_gate = std::cos(10.0 * geom::kPi / 180.0);
  double total = 0.0;
  for (std::size_t i = 0; i < a.pts.size(); ++i) {
    const geom::Segment ea = a.edge(i);
    const double len = ea.length();
    const geom::Point2 dir = ea.direction();
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    const double w = len / n;
    for (int k = 0; k < n; ++k) {
      const geom::Point2 p = ea.a + ((k + 0.5) * w) * dir;
      bool hit = false;
      for (std::size_t j = 0; j < b.pts.size() && !hit; ++j) {
        const geom::Segment eb = b.edge(j);
        const double lb = eb.length();
        if (lb <= 1e-12) continue;
        const geom::Point2 db = eb.direction();
        if (std::abs(geom::dot(dir, db)) < cos_gate) continue;
        const double u = geom::dot(p - eb.a, db);
        if (u <= 0.0 || u >= lb) continue;
        if (std::abs(geom::cross(db, p - eb.a)) <= eps) hit = true;
      }
      if (hit) total += w;
    }
  }
  return total;
}

// Label of a point from the raw regions, by the fixed priority order.
inline plan::SemanticLabel label_from_regions(const plan::Floorplan& fp, geom::Point2 p) {
  const plan::SemanticLabel order[] = {plan::SemanticLabel::Wall, plan::SemanticLabel::Table,
                                       plan::SemanticLabel::Obstacle, plan::SemanticLabel::Chair};
  for (plan::SemanticLabel want : order)
    for (const auto& r : fp.regions)
      if (r.label == want && geom::point_in_polygon(p, r.shape)) return want;
  return plan::SemanticLabel::Floor;
}

inline int label_class(plan::SemanticLabel label, plan::Context context) {
  // table/wall/floor/chair/obstacle, with chair folded into obstacle outside
  // the table context.
  switch (label) {
    case plan::SemanticLabel::Table: return 0;
    case plan::SemanticLabel::Wall: return 1;
    case plan::SemanticLabel::Floor: return 2;
    case plan::SemanticLabel::Chair:
      return context == plan::Context::Table ? 3 : 4;
    default: return 4;
  }
}

struct PsiGrid {
  double sem = 0.0, size = 0.0, mov = 0.0;
};

// Grid recomputation of the area-ratio terms straight from region polygons.
inline PsiGrid psi_area_terms_grid(const plan::Floorplan& host, const plan::Floorplan& client,
                                   const geom::Pose& pose, plan::Context context,
                                   double cell = 0.01) {
  const geom::Pose inv = geom::inverse(pose);
  const geom::Bounds hb = host.boundary.bounds();
  long host_cells = 0, overlap_cells = 0, matched_cells = 0;
  long host_mov = 0, mov_matched = 0;
  const int nx = static_cast<int>(std::ceil(hb.width() / cell));
  const int ny = static_cast<int>(std::ceil(hb.height() / cell));
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const geom::Point2 p{hb.min.x + (ix + 0.5) * cell, hb.min.y + (iy + 0.5) * cell};
      if (!geom::point_in_polygon(p, host.boundary)) continue;
      ++host_cells;
      const plan::SemanticLabel hl = label_from_regions(host, p);
      const bool host_movable =
          hl == plan::SemanticLabel::Floor ||
          (context == plan::Context::Table && hl == plan::SemanticLabel::Chair);
      if (host_movable) ++host_mov;
      const geom::Point2 q = inv.apply(p);
      if (!geom::point_in_polygon(q, client.boundary)) continue;
      ++overlap_cells;
      const plan::SemanticLabel cl = label_from_regions(client, q);
      if (label_class(hl, context) == label_class(cl, context)) ++matched_cells;
      const bool client_movable =
          cl == plan::SemanticLabel::Floor ||
          (context == plan::Context::Table && cl == plan::SemanticLabel::Chair);
      if (host_movable && client_movable) ++mov_matched;
    }
  }
  PsiGrid out;
  if (overlap_cells > 0) out.sem = static_cast<double>(matched_cells) / overlap_cells;
  if (host_cells > 0) out.size = static_cast<double>(overlap_cells) / host_cells;
  if (host_mov > 0) out.mov = static_cast<double>(mov_matched) / host_mov;
  return out;
}

struct BruteForceResult {
  bool feasible = false;
  double best_objective = 0.0;
  std::vector<int> assignment;
};

// Exhaustive joint assignment over small candidate sets.
inline BruteForceResult brute_force_placement(const place::CandidateSets& sets, int n_hosts,
                                              double personal_diameter) {
  BruteForceResult res;
  std::vector<const std::vector<place::Candidate>*> user_sets;
  for (int i = 0; i < n_hosts; ++i) user_sets.push_back(&sets[0]);
  for (std::size_t k = 1; k < sets.size(); ++k) user_sets.push_back(&sets[k]);
  const std::size_t n = user_sets.size();
  for (const auto* s : user_sets)
    if (s->empty()) return res;
  const double gap2 = personal_diameter * personal_diameter;
  std::vector<int> idx(n, 0);
  std::vector<int> cur(n, -1);

  std::function<void(std::size_t, double)> rec = [&](std::size_t u, double obj) {
    if (u == n) {
      if (!res.feasible || obj < res.best_objective) {
        res.feasible = true;
        res.best_objective = obj;
        res.assignment = cur;
      }
      return;
    }
    const auto& cands = *user_sets[u];
    for (std::size_t c = 0; c < cands.size(); ++c) {
      // identical host users: force increasing candidate indices
      if (u > 0 && user_sets[u] == user_sets[u - 1] && cur[u - 1] >= static_cast<int>(c))
        continue;
      bool ok = true;
      for (std::size_t v = 0; v < u && ok; ++v) {
        const auto& cv = (*user_sets[v])[cur[v]];
        const double dx = cv.position.x - cands[c].position.x;
        const double dy = cv.position.y - cands[c].position.y;
        if (dx * dx + dy * dy < gap2) ok = false;
      }
      if (!ok) continue;
      cur[u] = static_cast<int>(c);
      rec(u + 1, obj + cands[c].target_dist);
      cur[u] = -1;
    }
  };
  rec(0, 0.0);
  return res;
}

}  // namespace oracles
