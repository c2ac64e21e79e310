#include "mutualspace/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "mutualspace/errors.hpp"

namespace mutualspace::geom {

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, /*ClockWise=*/false, /*Closed=*/true>;
using BMulti = bg::model::multi_polygon<BPolygon>;

namespace {

constexpr double kDropArea = kAreaEps;  // boolean outputs below this are noise

BPolygon to_boost(const Polygon& p) {
  BPolygon out;
  out.outer().reserve(p.pts.size() + 1);
  for (const auto& v : p.pts) out.outer().emplace_back(v.x, v.y);
  if (!p.pts.empty()) out.outer().emplace_back(p.pts.front().x, p.pts.front().y);
  bg::correct(out);
  return out;
}

BMulti to_boost(const PolygonSet& s) {
  BMulti out;
  out.reserve(s.parts.size());
  for (const auto& p : s.parts) out.push_back(to_boost(p));
  return out;
}

Polygon ring_to_polygon(const BPolygon::ring_type& ring) {
  Polygon p;
  if (ring.size() < 4) return p;
  p.pts.reserve(ring.size() - 1);
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) p.pts.push_back({ring[i].x(), ring[i].y()});
  return p;
}

Bounds ring_bounds(const BPolygon::ring_type& ring) {
  Bounds b;
  for (const auto& pt : ring) b.expand({pt.x(), pt.y()});
  return b;
}

// Splits a polygon with holes into hole-free pieces by cutting along a line
// through the interior of one hole, recursing until no holes remain. Pieces
// may touch along the cut; interiors stay disjoint.
void decompose_holes(const BPolygon& poly, int depth, std::vector<Polygon>& out) {
  if (poly.inners().empty()) {
    Polygon p = ring_to_polygon(poly.outer());
    if (p.area() >= kDropArea) out.push_back(std::move(p));
    return;
  }
  if (depth > 48) {
    // Degenerate recursion; keep the outer ring and let the area tolerance
    // absorb the (sub-epsilon) holes still present.
    Polygon p = ring_to_polygon(poly.outer());
    if (p.area() >= kDropArea) out.push_back(std::move(p));
    return;
  }
  const Bounds hole = ring_bounds(poly.inners().front());
  const Bounds outer = ring_bounds(poly.outer());
  const bool cut_x = hole.width() >= hole.height();
  BMulti lo, hi;
  const double pad = 1.0;
  if (cut_x) {
    const double cx = 0.5 * (hole.min.x + hole.max.x);
    bg::intersection(poly, to_boost(make_rect(outer.min.x - pad, outer.min.y - pad, cx, outer.max.y + pad)), lo);
    bg::intersection(poly, to_boost(make_rect(cx, outer.min.y - pad, outer.max.x + pad, outer.max.y + pad)), hi);
  } else {
    const double cy = 0.5 * (hole.min.y + hole.max.y);
    bg::intersection(poly, to_boost(make_rect(outer.min.x - pad, outer.min.y - pad, outer.max.x + pad, cy)), lo);
    bg::intersection(poly, to_boost(make_rect(outer.min.x - pad, cy, outer.max.x + pad, outer.max.y + pad)), hi);
  }
  for (const auto& half : {lo, hi})
    for (const auto& piece : half) decompose_holes(piece, depth + 1, out);
}

PolygonSet from_boost(const BMulti& m) {
  PolygonSet out;
  for (const auto& poly : m) decompose_holes(poly, 0, out.parts);
  return out;
}

}  // namespace

void Pose::normalize() {
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
}

Pose compose(const Pose& outer, const Pose& inner) {
  const double c = std::cos(outer.theta), s = std::sin(outer.theta);
  Pose r;
  r.theta = outer.theta + inner.theta;
  r.tx = c * inner.tx - s * inner.ty + outer.tx;
  r.ty = s * inner.tx + c * inner.ty + outer.ty;
  r.normalize();
  return r;
}

Pose inverse(const Pose& p) {
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  Pose r;
  r.theta = -p.theta;
  r.tx = -(c * p.tx + s * p.ty);
  r.ty = -(-s * p.tx + c * p.ty);
  r.normalize();
  return r;
}

Point2 Segment::direction() const {
  const Point2 d = b - a;
  const double len = norm(d);
  if (len <= 0.0) return {1.0, 0.0};
  return {d.x / len, d.y / len};
}

void Bounds::expand(Point2 p) {
  min.x = std::min(min.x, p.x);
  min.y = std::min(min.y, p.y);
  max.x = std::max(max.x, p.x);
  max.y = std::max(max.y, p.y);
}

void Bounds::expand(const Bounds& other) {
  if (!other.valid()) return;
  expand(other.min);
  expand(other.max);
}

double Polygon::area() const {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) s += cross(pts[j], pts[i]);
  return 0.5 * s;
}

double Polygon::perimeter() const {
  const std::size_t n = pts.size();
  if (n < 2) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) s += distance(pts[j], pts[i]);
  return s;
}

Bounds Polygon::bounds() const {
  Bounds b;
  for (const auto& p : pts) b.expand(p);
  return b;
}

Point2 Polygon::centroid() const {
  const std::size_t n = pts.size();
  if (n == 0) return {};
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double w = cross(pts[j], pts[i]);
    a += w;
    cx += (pts[j].x + pts[i].x) * w;
    cy += (pts[j].y + pts[i].y) * w;
  }
  if (std::abs(a) < 1e-12) return pts.front();
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

Segment Polygon::edge(std::size_t i) const {
  return {pts[i], pts[(i + 1) % pts.size()]};
}

double PolygonSet::area() const {
  double s = 0.0;
  for (const auto& p : parts) s += p.area();
  return s;
}

Bounds PolygonSet::bounds() const {
  Bounds b;
  for (const auto& p : parts) b.expand(p.bounds());
  return b;
}

Point2 PolygonSet::centroid() const {
  double a = 0.0;
  Point2 c{};
  for (const auto& p : parts) {
    const double w = p.area();
    const Point2 pc = p.centroid();
    a += w;
    c.x += w * pc.x;
    c.y += w * pc.y;
  }
  if (a <= 0.0) return {};
  return {c.x / a, c.y / a};
}

Polygon make_rect(double x0, double y0, double x1, double y1) {
  if (x1 < x0) std::swap(x0, x1);
  if (y1 < y0) std::swap(y0, y1);
  return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

bool is_ccw(const Polygon& p) { return p.area() > 0.0; }

namespace {

bool segments_properly_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

bool is_simple(const Polygon& p) {
  const std::size_t n = p.pts.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip adjacent edges (sharing a vertex)
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_properly_intersect(p.pts[i], p.pts[(i + 1) % n], p.pts[j], p.pts[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

void validate_polygon(const Polygon& p, const std::string& what) {
  if (p.pts.size() < 3) throw ValidationError(what + ": polygon needs at least 3 vertices");
  for (const auto& v : p.pts) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw ValidationError(what + ": non-finite coordinate");
    if (std::abs(v.x) > kCoordBound || std::abs(v.y) > kCoordBound)
      throw ValidationError(what + ": coordinate exceeds the 1000 m sanity bound");
  }
  if (!is_ccw(p)) throw ValidationError(what + ": vertices must be counter-clockwise");
  if (p.area() <= kAreaEps) throw ValidationError(what + ": area below 1e-6 m^2");
  if (!is_simple(p)) throw ValidationError(what + ": polygon is self-intersecting");
}

PolygonSet boolean_op(BoolOp op, const PolygonSet& a, const PolygonSet& b) {
  const BMulti ba = to_boost(a), bb = to_boost(b);
  BMulti out;
  switch (op) {
    case BoolOp::Intersect: bg::intersection(ba, bb, out); break;
    case BoolOp::Union: bg::union_(ba, bb, out); break;
    case BoolOp::Difference: bg::difference(ba, bb, out); break;
  }
  return from_boost(out);
}

PolygonSet intersect(const PolygonSet& a, const PolygonSet& b) {
  return boolean_op(BoolOp::Intersect, a, b);
}
PolygonSet unite(const PolygonSet& a, const PolygonSet& b) {
  return boolean_op(BoolOp::Union, a, b);
}
PolygonSet subtract(const PolygonSet& a, const PolygonSet& b) {
  return boolean_op(BoolOp::Difference, a, b);
}

Polygon transformed(const Polygon& p, const Pose& pose) {
  Polygon out;
  out.pts.reserve(p.pts.size());
  for (const auto& v : p.pts) out.pts.push_back(pose.apply(v));
  return out;
}

PolygonSet transformed(const PolygonSet& s, const Pose& pose) {
  PolygonSet out;
  out.parts.reserve(s.parts.size());
  for (const auto& p : s.parts) out.parts.push_back(transformed(p, pose));
  return out;
}

Polygon offset_path(const Polygon& poly, double d) {
  if (d <= 0.0) throw std::invalid_argument("offset_path: d must be positive");
  const int points_per_circle = 180;
  bg::strategy::buffer::distance_symmetric<double> dist(d);
  bg::strategy::buffer::join_round join(points_per_circle);
  bg::strategy::buffer::end_round end(points_per_circle);
  bg::strategy::buffer::point_circle circ(points_per_circle);
  bg::strategy::buffer::side_straight side;
  BMulti out;
  bg::buffer(to_boost(poly), out, dist, side, join, end, circ);
  // The outward offset of a simple polygon has one outer boundary.
  const BPolygon* best = nullptr;
  double best_area = 0.0;
  for (const auto& p : out) {
    const double a = bg::area(p);
    if (a > best_area) {
      best_area = a;
      best = &p;
    }
  }
  if (best == nullptr) return {};
  return ring_to_polygon(best->outer());
}

namespace {

constexpr double kBoundarySample = 0.01;  // m
constexpr double kTangentCos = 0.98480775301220806;  // cos(10 deg)

struct EdgeDir {
  Segment seg;
  Point2 dir;
  double len;
};

std::vector<EdgeDir> edge_dirs(const Polygon& p) {
  std::vector<EdgeDir> out;
  out.reserve(p.pts.size());
  for (std::size_t i = 0; i < p.pts.size(); ++i) {
    Segment s = p.edge(i);
    const double len = s.length();
    if (len <= 1e-12) continue;
    out.push_back({s, s.direction(), len});
  }
  return out;
}

// True if p projects perpendicularly onto the interior of some face within
// eps, with tangent directions parallel within 10 degrees (undirected).
bool sample_aligned(Point2 p, Point2 tangent, std::span<const EdgeDir> faces, double eps) {
  for (const auto& f : faces) {
    if (std::abs(dot(tangent, f.dir)) < kTangentCos) continue;
    const Point2 rel = p - f.seg.a;
    const double u = dot(rel, f.dir);
    if (u <= 0.0 || u >= f.len) continue;
    const double off = std::abs(cross(f.dir, rel));
    if (off <= eps) return true;
  }
  return false;
}

double aligned_length_impl(std::span<const EdgeDir> subject, std::span<const EdgeDir> faces,
                           double eps) {
  double total = 0.0;
  for (const auto& e : subject) {
    const int n = std::max(1, static_cast<int>(std::ceil(e.len / kBoundarySample)));
    const double w = e.len / n;
    for (int k = 0; k < n; ++k) {
      const double t = (k + 0.5) * w;
      const Point2 p = e.seg.a + t * e.dir;
      if (sample_aligned(p, e.dir, faces, eps)) total += w;
    }
  }
  return total;
}

}  // namespace

double aligned_boundary_length(const Polygon& a, const Polygon& b, double eps) {
  if (a.pts.size() < 3 || b.pts.size() < 3) return 0.0;
  const auto subject = edge_dirs(a);
  const auto faces = edge_dirs(b);
  return aligned_length_impl(subject, faces, eps);
}

double aligned_segment_length(const Segment& seg, std::span<const Segment> faces, double eps) {
  const double len = seg.length();
  if (len <= 1e-12) return 0.0;
  std::vector<EdgeDir> subject{{seg, seg.direction(), len}};
  std::vector<EdgeDir> f;
  f.reserve(faces.size());
  for (const auto& s : faces) {
    const double l = s.length();
    if (l <= 1e-12) continue;
    f.push_back({s, s.direction(), l});
  }
  return aligned_length_impl(subject, f, eps);
}

namespace {

double wrap_angle(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a < -kPi) a += 2.0 * kPi;
  return a;
}

// Signed area of disk(0, r) ∩ polygon via Green's theorem: boundary pieces
// inside the disk contribute chord terms, pieces outside contribute arcs.
double disk_polygon_overlap(Point2 c, double r, const Polygon& poly) {
  const double r2 = r * r;
  double total = 0.0;
  const std::size_t n = poly.pts.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = poly.pts[j] - c;
    const Point2 b = poly.pts[i] - c;
    const Point2 d = b - a;
    const double dd = dot(d, d);
    double ts[4];
    int nt = 0;
    ts[nt++] = 0.0;
    if (dd > 1e-18) {
      // |a + t d|^2 = r^2
      const double pb = dot(a, d) / dd;
      const double q = (dot(a, a) - r2) / dd;
      const double disc = pb * pb - q;
      if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        for (double t : {-pb - sq, -pb + sq})
          if (t > 1e-12 && t < 1.0 - 1e-12) ts[nt++] = t;
      }
    }
    ts[nt++] = 1.0;
    std::sort(ts, ts + nt);
    for (int k = 0; k + 1 < nt; ++k) {
      const Point2 p = a + ts[k] * d;
      const Point2 q = a + ts[k + 1] * d;
      const Point2 m = a + 0.5 * (ts[k] + ts[k + 1]) * d;
      if (dot(m, m) <= r2) {
        total += 0.5 * cross(p, q);
      } else {
        total += 0.5 * r2 * wrap_angle(std::atan2(q.y, q.x) - std::atan2(p.y, p.x));
      }
    }
  }
  return total;
}

}  // namespace

double disk_overlap_area(Point2 center, double radius, const PolygonSet& s) {
  double total = 0.0;
  for (const auto& p : s.parts) {
    const Bounds b = p.bounds();
    if (center.x + radius < b.min.x || center.x - radius > b.max.x ||
        center.y + radius < b.min.y || center.y - radius > b.max.y)
      continue;
    total += disk_polygon_overlap(center, radius, p);
  }
  return std::max(total, 0.0);
}

bool clearance_ok(Point2 center, double radius, const PolygonSet& forbidden) {
  return disk_overlap_area(center, radius, forbidden) < 1e-4;
}

bool point_in_polygon(Point2 p, const Polygon& poly) {
  bool in = false;
  const std::size_t n = poly.pts.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& pi = poly.pts[i];
    const Point2& pj = poly.pts[j];
    if ((pi.y > p.y) != (pj.y > p.y)) {
      const double xint = pj.x + (p.y - pj.y) / (pi.y - pj.y) * (pi.x - pj.x);
      if (p.x < xint) in = !in;
    }
  }
  return in;
}

bool contains(const PolygonSet& s, Point2 p) {
  for (const auto& poly : s.parts)
    if (point_in_polygon(p, poly)) return true;
  return false;
}

double distance_point_segment(Point2 p, const Segment& s) {
  const Point2 d = s.b - s.a;
  const double dd = dot(d, d);
  if (dd <= 1e-18) return distance(p, s.a);
  double t = dot(p - s.a, d) / dd;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

double distance_to_boundary(Point2 p, const Polygon& poly) {
  double best = 1e30;
  for (std::size_t i = 0; i < poly.pts.size(); ++i)
    best = std::min(best, distance_point_segment(p, poly.edge(i)));
  return best;
}

double distance_to_boundary(Point2 p, const PolygonSet& s) {
  double best = 1e30;
  for (const auto& poly : s.parts) best = std::min(best, distance_to_boundary(p, poly));
  return best;
}

double min_boundary_distance(const Polygon& a, const Polygon& b) {
  double best = 1e30;
  for (std::size_t i = 0; i < a.pts.size(); ++i) {
    const Segment ea = a.edge(i);
    for (std::size_t j = 0; j < b.pts.size(); ++j) {
      const Segment eb = b.edge(j);
      if (segments_properly_intersect(ea.a, ea.b, eb.a, eb.b)) return 0.0;
      best = std::min({best, distance_point_segment(ea.a, eb), distance_point_segment(ea.b, eb),
                       distance_point_segment(eb.a, ea), distance_point_segment(eb.b, ea)});
    }
  }
  return best;
}

std::size_t OccupancyGrid::marked_count() const {
  std::size_t n = 0;
  for (auto c : cells) n += c;
  return n;
}

namespace {

OccupancyGrid make_grid(const PolygonSet& s, double cell) {
  if (cell < 0.001 || cell > 0.1) throw std::invalid_argument("rasterize: cell outside [0.001, 0.1]");
  OccupancyGrid g;
  g.cell = cell;
  if (s.empty()) return g;
  const Bounds b = s.bounds();
  g.x0 = std::floor(b.min.x / cell - 1.0) * cell;
  g.y0 = std::floor(b.min.y / cell - 1.0) * cell;
  g.nx = static_cast<int>(std::ceil((b.max.x - g.x0) / cell)) + 1;
  g.ny = static_cast<int>(std::ceil((b.max.y - g.y0) / cell)) + 1;
  g.cells.assign(static_cast<std::size_t>(g.nx) * g.ny, 0);
  return g;
}

inline void rasterize_row(const PolygonSet& s, OccupancyGrid& g, int iy) {
  const double y = g.y0 + (iy + 0.5) * g.cell;
  std::uint8_t* row = g.cells.data() + static_cast<std::size_t>(iy) * g.nx;
  for (int ix = 0; ix < g.nx; ++ix) {
    const Point2 p{g.x0 + (ix + 0.5) * g.cell, y};
    row[ix] = contains(s, p) ? 1 : 0;
  }
}

}  // namespace

OccupancyGrid rasterize(const PolygonSet& s, double cell) {
  OccupancyGrid g = make_grid(s, cell);
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < g.ny; ++iy) rasterize_row(s, g, iy);
  return g;
}

OccupancyGrid rasterize_serial(const PolygonSet& s, double cell) {
  OccupancyGrid g = make_grid(s, cell);
  for (int iy = 0; iy < g.ny; ++iy) rasterize_row(s, g, iy);
  return g;
}

}  // namespace mutualspace::geom
