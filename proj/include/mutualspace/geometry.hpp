#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace mutualspace::geom {

// Global tolerance scheme: areas in m^2, distances in m. Floorplans are
// meter-scale, so millimeter precision is already below sensor accuracy.
inline constexpr double kAreaEps = 1e-6;
inline constexpr double kDistEps = 1e-3;
inline constexpr double kCoordBound = 1000.0;
inline constexpr double kPi = 3.14159265358979323846;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// 2D rigid transform: rotate by theta about the origin, then translate.
struct Pose {
  double tx = 0.0;
  double ty = 0.0;
  double theta = 0.0;  // radians, normalized to [0, 2*pi)

  Point2 apply(Point2 p) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * p.x - s * p.y + tx, s * p.x + c * p.y + ty};
  }
  void normalize();
};

Pose compose(const Pose& outer, const Pose& inner);  // apply inner, then outer
Pose inverse(const Pose& p);

struct Segment {
  Point2 a, b;
  double length() const { return distance(a, b); }
  Point2 direction() const;  // unit vector a->b
  Point2 midpoint() const { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
};

struct Bounds {
  Point2 min{1e30, 1e30};
  Point2 max{-1e30, -1e30};
  void expand(Point2 p);
  void expand(const Bounds& other);
  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double diagonal() const { return distance(min, max); }
  bool valid() const { return min.x <= max.x && min.y <= max.y; }
};

// Simple polygon, CCW, no holes, vertices not repeated at the end.
struct Polygon {
  std::vector<Point2> pts;

  Polygon() = default;
  explicit Polygon(std::vector<Point2> v) : pts(std::move(v)) {}

  bool empty() const { return pts.empty(); }
  double area() const;       // shoelace, positive for CCW
  double perimeter() const;
  Bounds bounds() const;
  Point2 centroid() const;
  Segment edge(std::size_t i) const;  // i-th edge, wrapping
};

// Disjoint union of simple polygons. Holes are represented by even-odd
// decomposition into hole-free parts that may touch along cut edges.
struct PolygonSet {
  std::vector<Polygon> parts;

  PolygonSet() = default;
  explicit PolygonSet(Polygon p) { parts.push_back(std::move(p)); }
  explicit PolygonSet(std::vector<Polygon> v) : parts(std::move(v)) {}

  bool empty() const { return parts.empty(); }
  double area() const;
  Bounds bounds() const;
  Point2 centroid() const;  // area-weighted; origin for an empty set
};

Polygon make_rect(double x0, double y0, double x1, double y1);

// Validation helpers. validate_polygon throws ValidationError on failure.
bool is_ccw(const Polygon& p);
bool is_simple(const Polygon& p);
void validate_polygon(const Polygon& p, const std::string& what);

enum class BoolOp { Intersect, Union, Difference };

PolygonSet boolean_op(BoolOp op, const PolygonSet& a, const PolygonSet& b);
PolygonSet intersect(const PolygonSet& a, const PolygonSet& b);
PolygonSet unite(const PolygonSet& a, const PolygonSet& b);
PolygonSet subtract(const PolygonSet& a, const PolygonSet& b);

Polygon transformed(const Polygon& p, const Pose& pose);
PolygonSet transformed(const PolygonSet& s, const Pose& pose);

// Boundary of the Minkowski sum of poly with a disk of radius d (rounded
// corners). Returned as a closed ring of sampled vertices.
Polygon offset_path(const Polygon& poly, double d);

// Length of a's boundary lying within eps of b's boundary with locally
// parallel tangents (within 10 degrees). Sampled at 1 cm; a sample counts
// only if it projects perpendicularly onto the interior of some edge of b.
double aligned_boundary_length(const Polygon& a, const Polygon& b, double eps);
double aligned_segment_length(const Segment& seg, std::span<const Segment> faces, double eps);

// Exact area of disk(center, radius) ∩ s.
double disk_overlap_area(Point2 center, double radius, const PolygonSet& s);
// True iff the overlap area is below 1e-4 m^2.
bool clearance_ok(Point2 center, double radius, const PolygonSet& forbidden);

bool point_in_polygon(Point2 p, const Polygon& poly);
bool contains(const PolygonSet& s, Point2 p);

double distance_point_segment(Point2 p, const Segment& s);
double distance_to_boundary(Point2 p, const Polygon& poly);
double distance_to_boundary(Point2 p, const PolygonSet& s);
double min_boundary_distance(const Polygon& a, const Polygon& b);

// Occupancy-grid rasterization: a cell is marked iff its center lies in the
// set. Test oracle for the boolean kernel; grid origin is aligned to cell
// multiples so identical inputs yield identical grids.
struct OccupancyGrid {
  double x0 = 0.0, y0 = 0.0, cell = 0.01;
  int nx = 0, ny = 0;
  std::vector<std::uint8_t> cells;  // row-major [iy * nx + ix]

  bool at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * nx + ix] != 0; }
  std::size_t marked_count() const;
  double covered_area() const { return static_cast<double>(marked_count()) * cell * cell; }
};

OccupancyGrid rasterize(const PolygonSet& s, double cell);         // OpenMP over rows
OccupancyGrid rasterize_serial(const PolygonSet& s, double cell);  // reference kernel

}  // namespace mutualspace::geom
