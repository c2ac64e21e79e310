#include "mutualspace/matching.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mutualspace/errors.hpp"
#include "mutualspace/optimizer.hpp"

namespace mutualspace::match {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Label classes used for the semantic match: chair is its own (sittable)
// class in the table context and merges into obstacle otherwise.
struct ClassSets {
  geom::PolygonSet table, wall, floor, chair, obstacle;
};

ClassSets class_sets(const plan::SemanticMap& m) {
  ClassSets c;
  c.table = m.table;
  c.wall = m.wall;
  c.floor = m.floor;
  if (m.context == plan::Context::Table) {
    c.chair = m.chair;
    c.obstacle = m.obstacle;
  } else {
    c.obstacle = geom::unite(m.obstacle, m.chair);
  }
  return c;
}

double matched_class_area(const ClassSets& host, const ClassSets& client, const geom::Pose& pose) {
  double total = 0.0;
  total += geom::intersect(host.table, geom::transformed(client.table, pose)).area();
  total += geom::intersect(host.wall, geom::transformed(client.wall, pose)).area();
  total += geom::intersect(host.floor, geom::transformed(client.floor, pose)).area();
  total += geom::intersect(host.chair, geom::transformed(client.chair, pose)).area();
  total += geom::intersect(host.obstacle, geom::transformed(client.obstacle, pose)).area();
  return total;
}

struct HotPair {
  const PairSetup* setup;
  ClassSets host_classes, client_classes;
  double host_area = 0.0;
  double host_movable_area = 0.0;
  double host_table_perimeter = 0.0;
  double host_face_length = 0.0;
};

HotPair make_hot(const PairSetup& setup) {
  HotPair h;
  h.setup = &setup;
  h.host_classes = class_sets(setup.host_map);
  h.client_classes = class_sets(setup.client_map);
  h.host_area = setup.host_map.footprint.area();
  h.host_movable_area = setup.host_map.movable_floor.area();
  h.host_table_perimeter = setup.has_tables ? setup.host_table.perimeter() : 0.0;
  h.host_face_length = setup.has_walls ? setup.host_wall_face.length() : 0.0;
  return h;
}

PsiTerms terms_at(const HotPair& h, const geom::Pose& pose, const ContextWeights& w,
                  bool force_all, double boundary_eps, double* overlap_out) {
  const PairSetup& s = *h.setup;
  PsiTerms t;
  const geom::PolygonSet tfp = geom::transformed(s.client_map.footprint, pose);
  const geom::PolygonSet common = geom::intersect(s.host_map.footprint, tfp);
  const double overlap = common.area();
  if (overlap_out != nullptr) *overlap_out = overlap;
  if (overlap <= geom::kAreaEps) return t;
  if (force_all || w.sem != 0.0)
    t.sem = clamp01(matched_class_area(h.host_classes, h.client_classes, pose) / overlap);
  if (force_all || w.size != 0.0) t.size = clamp01(overlap / h.host_area);
  if ((force_all || w.hor != 0.0) && s.has_tables && h.host_table_perimeter > 0.0)
    t.hor = clamp01(geom::aligned_boundary_length(
                        s.host_table, geom::transformed(s.client_table, pose), boundary_eps) /
                    h.host_table_perimeter);
  if ((force_all || w.ver != 0.0) && s.has_walls && h.host_face_length > 0.0)
    t.ver = clamp01(psi_i_ver(s.host_wall_face, s.client_wall_faces, pose, boundary_eps));
  if ((force_all || w.mov != 0.0) && h.host_movable_area > 0.0)
    t.mov = clamp01(
        geom::intersect(s.host_map.movable_floor, geom::transformed(s.client_map.movable_floor, pose))
            .area() /
        h.host_movable_area);
  return t;
}

double weighted_sum(const PsiTerms& t, const ContextWeights& w) {
  return w.sem * t.sem + w.size * t.size + w.hor * t.hor + w.ver * t.ver + w.mov * t.mov;
}

double objective_value(const HotPair& h, const geom::Pose& pose, const ContextWeights& w,
                       double boundary_eps) {
  double overlap = 0.0;
  const PsiTerms t = terms_at(h, pose, w, /*force_all=*/false, boundary_eps, &overlap);
  if (overlap <= geom::kAreaEps) return -1.0;  // non-overlapping pose
  return weighted_sum(t, w);
}

}  // namespace

PairSetup prepare_pair(const plan::Floorplan& host, const plan::Floorplan& client,
                       plan::Context context, const std::string& host_target_id) {
  PairSetup s;
  s.context = context;
  s.host = &host;
  s.client = &client;
  s.host_map = plan::semantic_map(host, context);
  s.client_map = plan::semantic_map(client, context);
  s.targets = scene::select_target(host, client, context, host_target_id);
  if (context == plan::Context::Table) {
    s.host_table = host.find_region(s.targets.host.region_id)->shape;
    s.client_table = client.find_region(s.targets.client.region_id)->shape;
    s.has_tables = true;
  } else if (context == plan::Context::Wall) {
    const plan::LabeledRegion* hw = host.find_region(s.targets.host.region_id);
    s.host_wall_face = scene::wall_inner_face(host, *hw);
    for (const auto& r : client.regions)
      if (r.label == plan::SemanticLabel::Wall)
        s.client_wall_faces.push_back(scene::wall_inner_face(client, r));
    s.has_walls = true;
  }
  return s;
}

double psi_g_sem(const plan::SemanticMap& host, const plan::SemanticMap& client,
                 const geom::Pose& pose, plan::Context context) {
  (void)context;  // class merging follows the maps' own context
  const geom::PolygonSet common =
      geom::intersect(host.footprint, geom::transformed(client.footprint, pose));
  const double overlap = common.area();
  if (overlap <= geom::kAreaEps) return 0.0;
  return clamp01(matched_class_area(class_sets(host), class_sets(client), pose) / overlap);
}

double psi_g_size(const plan::SemanticMap& host, const plan::SemanticMap& client,
                  const geom::Pose& pose) {
  const double denom = host.footprint.area();
  if (denom <= geom::kAreaEps) return 0.0;
  const double overlap =
      geom::intersect(host.footprint, geom::transformed(client.footprint, pose)).area();
  return clamp01(overlap / denom);
}

double psi_i_hor(const geom::Polygon& host_table, const geom::Polygon& client_table,
                 const geom::Pose& pose, double eps_b) {
  const double perim = host_table.perimeter();
  if (perim <= 0.0) return 0.0;
  return clamp01(
      geom::aligned_boundary_length(host_table, geom::transformed(client_table, pose), eps_b) /
      perim);
}

double psi_i_ver(const geom::Segment& host_face, std::span<const geom::Segment> client_faces,
                 const geom::Pose& pose, double eps_b) {
  const double len = host_face.length();
  if (len <= 0.0) return 0.0;
  std::vector<geom::Segment> moved;
  moved.reserve(client_faces.size());
  for (const auto& f : client_faces) moved.push_back({pose.apply(f.a), pose.apply(f.b)});
  return clamp01(geom::aligned_segment_length(host_face, moved, eps_b) / len);
}

double psi_i_mov(const plan::SemanticMap& host, const plan::SemanticMap& client,
                 const geom::Pose& pose) {
  const double denom = host.movable_floor.area();
  if (denom <= geom::kAreaEps) return 0.0;
  const double overlap =
      geom::intersect(host.movable_floor, geom::transformed(client.movable_floor, pose)).area();
  return clamp01(overlap / denom);
}

MatchResult objective_at(const PairSetup& setup, const geom::Pose& pose,
                         const ContextWeights& weights, double boundary_eps) {
  const HotPair h = make_hot(setup);
  MatchResult r;
  r.pose = pose;
  r.pose.normalize();
  r.terms = terms_at(h, r.pose, weights, /*force_all=*/true, boundary_eps, nullptr);
  r.objective = weighted_sum(r.terms, weights);
  r.host_target = setup.targets.host.region_id;
  r.client_target = setup.targets.client.region_id;
  return r;
}

namespace {

std::vector<double> batch_objective_impl(const HotPair& h, std::span<const geom::Pose> poses,
                                         const ContextWeights& weights, double boundary_eps,
                                         int jobs) {
  std::vector<double> out(poses.size());
  if (jobs == 1) {
    for (std::size_t i = 0; i < poses.size(); ++i)
      out[i] = objective_value(h, poses[i], weights, boundary_eps);
    return out;
  }
#ifdef _OPENMP
  const int nt = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 2) num_threads(nt)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(poses.size()); ++i)
    out[static_cast<std::size_t>(i)] =
        objective_value(h, poses[static_cast<std::size_t>(i)], weights, boundary_eps);
#else
  for (std::size_t i = 0; i < poses.size(); ++i)
    out[i] = objective_value(h, poses[i], weights, boundary_eps);
#endif
  return out;
}

}  // namespace

std::vector<double> batch_objective(const PairSetup& setup, std::span<const geom::Pose> poses,
                                    const ContextWeights& weights, int jobs) {
  const HotPair h = make_hot(setup);
  return batch_objective_impl(h, poses, weights, 0.05, jobs);
}

std::vector<double> batch_objective_serial(const PairSetup& setup,
                                           std::span<const geom::Pose> poses,
                                           const ContextWeights& weights) {
  const HotPair h = make_hot(setup);
  return batch_objective_impl(h, poses, weights, 0.05, 1);
}

namespace {

geom::Point2 context_anchor(const plan::SemanticMap& m, const PairSetup& s, bool host_side) {
  switch (s.context) {
    case plan::Context::Table:
      return host_side ? s.host_table.centroid() : s.client_table.centroid();
    case plan::Context::Wall:
      if (host_side) return s.host_wall_face.midpoint();
      if (!s.client_wall_faces.empty()) {
        const plan::LabeledRegion* cw = s.client->find_region(s.targets.client.region_id);
        if (cw != nullptr) return scene::wall_inner_face(*s.client, *cw).midpoint();
        return s.client_wall_faces.front().midpoint();
      }
      return m.movable_floor.centroid();
    case plan::Context::Floor: break;
  }
  return m.movable_floor.empty() ? m.boundary.centroid() : m.movable_floor.centroid();
}

}  // namespace

MatchResult optimize_pose(const PairSetup& setup, const ContextWeights& weights,
                          const MatchConfig& cfg) {
  const HotPair hot = make_hot(setup);
  const geom::Bounds hb = setup.host_map.boundary.bounds();

  const geom::Point2 host_anchor = context_anchor(setup.host_map, setup, true);
  const geom::Point2 client_anchor = context_anchor(setup.client_map, setup, false);
  const geom::Point2 host_center = setup.host_map.footprint.centroid();
  const geom::Point2 client_center = setup.client_map.footprint.centroid();

  auto bounds_for = [&](double theta, std::vector<double>& lo, std::vector<double>& hi) {
    const geom::Bounds cb =
        geom::transformed(setup.client_map.footprint, geom::Pose{0.0, 0.0, theta}).bounds();
    lo = {hb.min.x - cb.max.x, hb.min.y - cb.max.y};
    hi = {hb.max.x - cb.min.x, hb.max.y - cb.min.y};
  };
  auto seeds_for = [&](double theta) {
    const double c = std::cos(theta), si = std::sin(theta);
    auto align = [&](geom::Point2 host_pt, geom::Point2 client_pt) {
      return std::vector<double>{host_pt.x - (c * client_pt.x - si * client_pt.y),
                                 host_pt.y - (si * client_pt.x + c * client_pt.y)};
    };
    return std::vector<std::vector<double>>{align(host_anchor, client_anchor),
                                            align(host_center, client_center)};
  };

  opt::DeResult best;
  geom::Pose best_pose;
  bool found = false;

  if (!cfg.continuous_rotation) {
    for (int q = 0; q < 4; ++q) {
      const double theta = q * geom::kPi / 2.0;
      std::vector<double> lo, hi;
      bounds_for(theta, lo, hi);
      opt::DeConfig dc;
      dc.population = cfg.population;
      dc.generations = cfg.generations;
      dc.seed = opt::mix_seed(cfg.seed, static_cast<std::uint64_t>(q) + 101);
      auto eval = [&](const std::vector<std::vector<double>>& xs, std::vector<double>& fs) {
        std::vector<geom::Pose> poses(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) poses[i] = {xs[i][0], xs[i][1], theta};
        fs = batch_objective_impl(hot, poses, weights, cfg.boundary_eps, cfg.jobs);
      };
      opt::DeResult r = opt::de_maximize(lo, hi, seeds_for(theta), eval, dc);
      r = opt::pattern_refine(
          r.x, lo, hi,
          [&](const std::vector<double>& x) {
            return objective_value(hot, {x[0], x[1], theta}, weights, cfg.boundary_eps);
          },
          0.1, 1e-5);
      if (!found || r.value > best.value) {
        best = r;
        best_pose = {r.x[0], r.x[1], theta};
        found = true;
      }
    }
  } else {
    // Continuous rotation: optimize (tx, ty, theta) jointly with bounds wide
    // enough for any rotation, seeded from the four quarter turns.
    geom::Bounds cb_all;
    for (int q = 0; q < 4; ++q)
      cb_all.expand(
          geom::transformed(setup.client_map.footprint, geom::Pose{0.0, 0.0, q * geom::kPi / 2.0})
              .bounds());
    const double diag = setup.client_map.boundary.bounds().diagonal();
    std::vector<double> lo = {hb.min.x - cb_all.max.x - diag, hb.min.y - cb_all.max.y - diag, 0.0};
    std::vector<double> hi = {hb.max.x - cb_all.min.x + diag, hb.max.y - cb_all.min.y + diag,
                              2.0 * geom::kPi};
    std::vector<std::vector<double>> seeds;
    for (int q = 0; q < 4; ++q) {
      const double theta = q * geom::kPi / 2.0;
      for (auto& s : seeds_for(theta)) {
        s.push_back(theta);
        seeds.push_back(std::move(s));
      }
    }
    opt::DeConfig dc;
    dc.population = std::max(cfg.population, 32);
    dc.generations = cfg.generations;
    dc.seed = opt::mix_seed(cfg.seed, 7);
    auto eval = [&](const std::vector<std::vector<double>>& xs, std::vector<double>& fs) {
      std::vector<geom::Pose> poses(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) poses[i] = {xs[i][0], xs[i][1], xs[i][2]};
      fs = batch_objective_impl(hot, poses, weights, cfg.boundary_eps, cfg.jobs);
    };
    opt::DeResult r = opt::de_maximize(lo, hi, seeds, eval, dc);
    r = opt::pattern_refine(
        r.x, lo, hi,
        [&](const std::vector<double>& x) {
          return objective_value(hot, {x[0], x[1], x[2]}, weights, cfg.boundary_eps);
        },
        0.1, 1e-5);
    best = r;
    best_pose = {r.x[0], r.x[1], r.x[2]};
    found = true;
  }

  if (!found || best.value <= -0.5)
    throw MatchFailedError("no overlapping pose found for '" + setup.client->id + "' in '" +
                           setup.host->id + "'");
  return objective_at(setup, best_pose, weights, cfg.boundary_eps);
}

OverlayClasses semantic_overlay(const plan::SemanticMap& host, const plan::SemanticMap& client,
                                const geom::Pose& pose, plan::Context context) {
  OverlayClasses o;
  o.client_footprint = geom::transformed(client.footprint, pose);
  o.common_footprint = geom::intersect(host.footprint, o.client_footprint);
  const ClassSets hc = class_sets(host);
  const ClassSets cc = class_sets(client);
  o.matched_table = geom::intersect(hc.table, geom::transformed(cc.table, pose));
  o.matched_wall = geom::intersect(hc.wall, geom::transformed(cc.wall, pose));
  o.matched_floor = geom::intersect(hc.floor, geom::transformed(cc.floor, pose));
  o.matched_chair = geom::intersect(hc.chair, geom::transformed(cc.chair, pose));
  o.matched_obstacle = geom::intersect(hc.obstacle, geom::transformed(cc.obstacle, pose));
  o.matched_all = geom::unite(o.matched_table, o.matched_wall);
  o.matched_all = geom::unite(o.matched_all, o.matched_floor);
  o.matched_all = geom::unite(o.matched_all, o.matched_chair);
  o.matched_all = geom::unite(o.matched_all, o.matched_obstacle);
  o.unmatched = geom::subtract(o.common_footprint, o.matched_all);
  o.matched_walkable =
      geom::intersect(host.movable_floor, geom::transformed(client.movable_floor, pose));
  (void)context;
  return o;
}

}  // namespace mutualspace::match
