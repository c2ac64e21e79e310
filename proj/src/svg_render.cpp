#include "mutualspace/svg_render.hpp"

#include <cstdio>
#include <sstream>

#include "mutualspace/matching.hpp"

namespace mutualspace::svg {

namespace {

constexpr double kScale = 100.0;  // px per meter
constexpr double kMargin = 40.0;  // px

// Fixed palette per semantic label; gray marks semantically unmatched area.
const char* kFloorFill = "#f7f3ea";
const char* kTableFill = "#c9995c";
const char* kWallFill = "#4d4d4d";
const char* kChairFill = "#8cb872";
const char* kObstacleFill = "#a9a4a0";
const char* kUnmatchedFill = "#bdbdbd";
const char* kSubspaceStroke[] = {"#d1495b", "#1b6ca8", "#2e933c", "#b07bac",
                                 "#e3b505", "#4f6d7a"};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Canvas {
  std::ostringstream out;
  double x0 = 0.0, y1 = 0.0;  // world-space origin and top

  double px(double x) const { return kMargin + (x - x0) * kScale; }
  double py(double y) const { return kMargin + (y1 - y) * kScale; }  // y flips

  void open(const geom::Bounds& world) {
    x0 = world.min.x;
    y1 = world.max.y;
    const double w = world.width() * kScale + 2.0 * kMargin;
    const double h = world.height() * kScale + 2.0 * kMargin;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
        << num(h) << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
    out << "<rect width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"white\"/>\n";
  }

  void polygon(const geom::Polygon& poly, const std::string& fill, const std::string& stroke,
               double stroke_width, double opacity = 1.0) {
    if (poly.pts.size() < 3) return;
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < poly.pts.size(); ++i) {
      if (i != 0) out << ' ';
      out << num(px(poly.pts[i].x)) << ',' << num(py(poly.pts[i].y));
    }
    out << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
        << num(stroke_width) << "\"";
    if (opacity < 1.0) out << " fill-opacity=\"" << num(opacity) << "\"";
    out << "/>\n";
  }

  void polyset(const geom::PolygonSet& s, const std::string& fill, const std::string& stroke,
               double stroke_width, double opacity = 1.0) {
    for (const auto& p : s.parts) polygon(p, fill, stroke, stroke_width, opacity);
  }

  void line(const geom::Segment& seg, const std::string& stroke, double width) {
    out << "<line x1=\"" << num(px(seg.a.x)) << "\" y1=\"" << num(py(seg.a.y)) << "\" x2=\""
        << num(px(seg.b.x)) << "\" y2=\"" << num(py(seg.b.y)) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"" << num(width) << "\" stroke-linecap=\"round\"/>\n";
  }

  void user_marker(geom::Point2 p, const std::string& label) {
    out << "<circle cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y)) << "\" r=\""
        << num(0.3 * kScale) << "\" fill=\"#ffd166\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << num(px(p.x)) << "\" y=\"" << num(py(p.y) + 5.0)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" fill=\"#333333\">"
        << label << "</text>\n";
  }

  std::string close() {
    out << "</svg>\n";
    return out.str();
  }
};

const char* label_fill(plan::SemanticLabel label) {
  switch (label) {
    case plan::SemanticLabel::Table: return kTableFill;
    case plan::SemanticLabel::Wall: return kWallFill;
    case plan::SemanticLabel::Chair: return kChairFill;
    case plan::SemanticLabel::Obstacle: return kObstacleFill;
    case plan::SemanticLabel::Floor: return kFloorFill;
  }
  return kFloorFill;
}

void draw_plan(Canvas& c, const plan::Floorplan& fp) {
  c.polygon(fp.boundary, kFloorFill, "#333333", 2.0);
  for (const auto& r : fp.regions) c.polygon(r.shape, label_fill(r.label), "#555555", 0.8);
}

}  // namespace

std::string render_floorplan(const plan::Floorplan& fp) {
  Canvas c;
  c.open(fp.boundary.bounds());
  draw_plan(c, fp);
  return c.close();
}

std::string render_mutual_space(const subspace::MutualSpace& ms) {
  Canvas c;
  geom::Bounds world = ms.host.boundary.bounds();
  for (const auto& cl : ms.clients) world.expand(cl.subspace.region.bounds());
  c.open(world);
  draw_plan(c, ms.host);

  for (std::size_t i = 0; i < ms.clients.size(); ++i) {
    const auto& cl = ms.clients[i];
    const std::string stroke = kSubspaceStroke[i % 6];
    c.polyset(cl.subspace.region, "#ffffff", stroke, 2.0, 0.55);
    // Obstacle and semantically unmatched cells inside the subspace.
    c.polyset(cl.subspace.obstacle_region, kUnmatchedFill, "none", 0.0, 0.85);
  }
  for (std::size_t i = 0; i < ms.clients.size(); ++i)
    for (const auto& w : ms.clients[i].walls) c.line(w, kSubspaceStroke[i % 6], 3.0);
  for (const auto& u : ms.users) c.user_marker(u.position, u.label);
  return c.close();
}

}  // namespace mutualspace::svg
