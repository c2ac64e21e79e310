#include "mutualspace/corpus.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "mutualspace/errors.hpp"

namespace mutualspace::corpus {

namespace {

using plan::Floorplan;
using plan::LabeledRegion;
using plan::PlanKind;
using plan::SemanticLabel;

constexpr double kWallThickness = 0.1;

class Room {
 public:
  Room(std::string id, PlanKind kind) {
    fp_.id = std::move(id);
    fp_.kind = kind;
  }

  Room& rect_boundary(double w, double h) {
    fp_.boundary = geom::make_rect(0.0, 0.0, w, h);
    add_rect(SemanticLabel::Wall, "wall-s", 0.0, 0.0, w, kWallThickness);
    add_rect(SemanticLabel::Wall, "wall-n", 0.0, h - kWallThickness, w, h);
    add_rect(SemanticLabel::Wall, "wall-w", 0.0, kWallThickness, kWallThickness,
             h - kWallThickness);
    add_rect(SemanticLabel::Wall, "wall-e", w - kWallThickness, kWallThickness, w,
             h - kWallThickness);
    return *this;
  }

  Room& boundary(geom::Polygon p) {
    fp_.boundary = std::move(p);
    return *this;
  }

  Room& add_rect(SemanticLabel label, const std::string& id, double x0, double y0, double x1,
                 double y1) {
    fp_.regions.push_back({id, label, geom::make_rect(x0, y0, x1, y1)});
    return *this;
  }

  Room& add_poly(SemanticLabel label, const std::string& id, geom::Polygon p) {
    fp_.regions.push_back({id, label, std::move(p)});
    return *this;
  }

  Floorplan build() {
    plan::validate(fp_);
    return fp_;
  }

 private:
  Floorplan fp_;
};

geom::Polygon octagon(double cx, double cy, double r) {
  geom::Polygon p;
  for (int k = 0; k < 8; ++k) {
    const double a = (2.0 * k + 1.0) * geom::kPi / 8.0;
    p.pts.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  return p;
}

Floorplan meeting_room_1() {
  return Room("meeting-room-1", PlanKind::Host)
      .rect_boundary(6.0, 4.8)
      .add_rect(SemanticLabel::Table, "table-1", 1.8, 1.8, 4.2, 3.0)
      .add_rect(SemanticLabel::Chair, "chair-n1", 1.95, 3.1, 2.45, 3.6)
      .add_rect(SemanticLabel::Chair, "chair-n2", 2.75, 3.1, 3.25, 3.6)
      .add_rect(SemanticLabel::Chair, "chair-n3", 3.55, 3.1, 4.05, 3.6)
      .add_rect(SemanticLabel::Chair, "chair-s1", 1.95, 1.2, 2.45, 1.7)
      .add_rect(SemanticLabel::Chair, "chair-s2", 2.75, 1.2, 3.25, 1.7)
      .add_rect(SemanticLabel::Chair, "chair-s3", 3.55, 1.2, 4.05, 1.7)
      .add_rect(SemanticLabel::Chair, "chair-e", 4.3, 2.15, 4.8, 2.65)
      .add_rect(SemanticLabel::Chair, "chair-w", 1.2, 2.15, 1.7, 2.65)
      .add_rect(SemanticLabel::Obstacle, "sideboard", 0.3, 4.2, 1.8, 4.7)
      .add_rect(SemanticLabel::Obstacle, "display", 5.4, 1.6, 5.9, 3.2)
      .build();
}

Floorplan meeting_room_2() {
  return Room("meeting-room-2", PlanKind::Host)
      .rect_boundary(4.6, 3.8)
      .add_rect(SemanticLabel::Table, "table-1", 1.5, 1.45, 3.1, 2.35)
      .add_rect(SemanticLabel::Chair, "chair-n1", 1.7, 2.45, 2.2, 2.95)
      .add_rect(SemanticLabel::Chair, "chair-n2", 2.5, 2.45, 3.0, 2.95)
      .add_rect(SemanticLabel::Chair, "chair-s1", 1.7, 0.85, 2.2, 1.35)
      .add_rect(SemanticLabel::Chair, "chair-s2", 2.5, 0.85, 3.0, 1.35)
      .add_rect(SemanticLabel::Chair, "chair-e", 3.2, 1.65, 3.7, 2.15)
      .add_rect(SemanticLabel::Chair, "chair-w", 0.9, 1.65, 1.4, 2.15)
      .add_rect(SemanticLabel::Obstacle, "cabinet", 0.1, 3.2, 1.3, 3.7)
      .build();
}

Floorplan meeting_room_3() {
  return Room("meeting-room-3", PlanKind::Host)
      .rect_boundary(4.0, 3.4)
      .add_rect(SemanticLabel::Table, "table-1", 1.35, 1.3, 2.65, 2.1)
      .add_rect(SemanticLabel::Chair, "chair-n1", 1.45, 2.2, 1.95, 2.7)
      .add_rect(SemanticLabel::Chair, "chair-n2", 2.15, 2.2, 2.65, 2.7)
      .add_rect(SemanticLabel::Chair, "chair-s1", 1.45, 0.7, 1.95, 1.2)
      .add_rect(SemanticLabel::Chair, "chair-e", 2.75, 1.45, 3.25, 1.95)
      .add_rect(SemanticLabel::Obstacle, "shelf", 3.1, 0.1, 3.9, 0.45)
      .build();
}

Floorplan meeting_room_4() {
  // Telepresence-style room: a long table with a single row of seats.
  return Room("meeting-room-4", PlanKind::Host)
      .rect_boundary(6.2, 4.0)
      .add_rect(SemanticLabel::Table, "table-1", 1.5, 1.0, 4.7, 2.0)
      .add_rect(SemanticLabel::Chair, "chair-1", 1.7, 2.1, 2.2, 2.6)
      .add_rect(SemanticLabel::Chair, "chair-2", 2.5, 2.1, 3.0, 2.6)
      .add_rect(SemanticLabel::Chair, "chair-3", 3.3, 2.1, 3.8, 2.6)
      .add_rect(SemanticLabel::Chair, "chair-4", 4.1, 2.1, 4.6, 2.6)
      .add_rect(SemanticLabel::Obstacle, "media-rack", 2.2, 0.1, 4.0, 0.55)
      .add_rect(SemanticLabel::Obstacle, "console", 0.1, 3.0, 0.7, 3.9)
      .build();
}

Floorplan home_1() {
  return Room("home-1", PlanKind::Home)
      .rect_boundary(4.2, 3.6)
      .add_rect(SemanticLabel::Table, "table-1", 3.0, 1.4, 4.1, 2.2)
      .add_rect(SemanticLabel::Chair, "chair-1", 2.4, 1.45, 2.9, 1.95)
      .add_rect(SemanticLabel::Chair, "chair-2", 3.2, 0.8, 3.7, 1.3)
      .add_rect(SemanticLabel::Obstacle, "couch", 0.4, 0.1, 2.4, 0.95)
      .add_rect(SemanticLabel::Obstacle, "tv-stand", 1.0, 3.1, 2.2, 3.5)
      .build();
}

Floorplan home_2() {
  return Room("home-2", PlanKind::Home)
      .rect_boundary(3.8, 3.4)
      .add_rect(SemanticLabel::Obstacle, "bed", 0.1, 1.3, 1.6, 3.3)
      .add_rect(SemanticLabel::Table, "table-1", 2.5, 0.1, 3.6, 0.7)
      .add_rect(SemanticLabel::Chair, "chair-1", 2.8, 0.8, 3.3, 1.3)
      .add_rect(SemanticLabel::Obstacle, "wardrobe", 3.1, 2.5, 3.7, 3.3)
      .build();
}

Floorplan home_3() {
  geom::Polygon boundary{{{0.0, 0.0},
                          {2.6, 0.0},
                          {2.6, 1.6},
                          {4.6, 1.6},
                          {4.6, 4.0},
                          {0.0, 4.0}}};
  return Room("home-3", PlanKind::Home)
      .boundary(std::move(boundary))
      .add_rect(SemanticLabel::Wall, "wall-s", 0.0, 0.0, 2.6, 0.1)
      .add_rect(SemanticLabel::Wall, "wall-e1", 2.5, 0.1, 2.6, 1.6)
      .add_rect(SemanticLabel::Wall, "wall-s2", 2.6, 1.6, 4.6, 1.7)
      .add_rect(SemanticLabel::Wall, "wall-e2", 4.5, 1.7, 4.6, 4.0)
      .add_rect(SemanticLabel::Wall, "wall-n", 0.0, 3.9, 4.5, 4.0)
      .add_rect(SemanticLabel::Wall, "wall-w", 0.0, 0.1, 0.1, 3.9)
      .add_rect(SemanticLabel::Obstacle, "counter", 0.1, 3.3, 2.2, 3.9)
      .add_rect(SemanticLabel::Table, "table-1", 1.0, 1.5, 2.0, 2.2)
      .add_rect(SemanticLabel::Chair, "chair-1", 1.2, 0.9, 1.7, 1.4)
      .add_rect(SemanticLabel::Chair, "chair-2", 2.1, 1.6, 2.6, 2.1)
      .add_rect(SemanticLabel::Obstacle, "couch", 3.0, 2.0, 4.4, 2.85)
      .build();
}

Floorplan home_4() {
  return Room("home-4", PlanKind::Home)
      .rect_boundary(4.8, 4.0)
      .add_rect(SemanticLabel::Obstacle, "couch", 1.4, 0.8, 3.6, 1.7)
      .add_rect(SemanticLabel::Table, "coffee-table", 2.0, 2.0, 2.9, 2.55)
      .add_rect(SemanticLabel::Table, "dining-table", 3.3, 2.8, 4.7, 3.6)
      .add_rect(SemanticLabel::Chair, "chair-1", 2.7, 2.95, 3.2, 3.45)
      .add_rect(SemanticLabel::Chair, "chair-2", 3.5, 2.2, 4.0, 2.7)
      .add_rect(SemanticLabel::Chair, "chair-3", 4.1, 2.2, 4.6, 2.7)
      .add_rect(SemanticLabel::Obstacle, "shelf", 0.1, 2.6, 0.5, 3.9)
      .build();
}

Floorplan home_5() {
  return Room("home-5", PlanKind::Home)
      .rect_boundary(3.4, 3.2)
      .add_rect(SemanticLabel::Obstacle, "bed", 0.1, 0.9, 1.3, 2.8)
      .add_rect(SemanticLabel::Table, "table-1", 1.9, 1.3, 2.9, 1.95)
      .add_rect(SemanticLabel::Chair, "chair-1", 2.2, 2.05, 2.7, 2.55)
      .add_rect(SemanticLabel::Chair, "chair-2", 2.2, 0.7, 2.7, 1.2)
      .add_rect(SemanticLabel::Obstacle, "bookshelf", 1.6, 0.1, 3.1, 0.45)
      .build();
}

Floorplan office_1() {
  return Room("office-1", PlanKind::Office)
      .rect_boundary(4.4, 3.6)
      .add_rect(SemanticLabel::Table, "desk", 1.4, 2.7, 3.0, 3.5)
      .add_rect(SemanticLabel::Chair, "chair-1", 1.9, 2.1, 2.4, 2.6)
      .add_rect(SemanticLabel::Chair, "chair-2", 2.6, 2.1, 3.1, 2.6)
      .add_rect(SemanticLabel::Obstacle, "cabinet", 0.8, 0.1, 2.2, 0.55)
      .add_rect(SemanticLabel::Obstacle, "printer", 3.6, 0.1, 4.1, 0.6)
      .build();
}

Floorplan office_2() {
  return Room("office-2", PlanKind::Office)
      .rect_boundary(5.0, 2.8)
      .add_rect(SemanticLabel::Table, "desk-1", 0.9, 1.9, 2.5, 2.7)
      .add_rect(SemanticLabel::Table, "desk-2", 2.7, 1.9, 4.3, 2.7)
      .add_rect(SemanticLabel::Chair, "chair-1", 1.4, 1.3, 1.9, 1.8)
      .add_rect(SemanticLabel::Chair, "chair-2", 3.2, 1.3, 3.7, 1.8)
      .add_rect(SemanticLabel::Obstacle, "lockers", 0.9, 0.1, 2.4, 0.5)
      .build();
}

Floorplan office_3() {
  return Room("office-3", PlanKind::Office)
      .rect_boundary(4.0, 4.0)
      .add_rect(SemanticLabel::Table, "cluster", 1.1, 1.2, 2.9, 2.8)
      .add_rect(SemanticLabel::Chair, "chair-n", 1.8, 2.9, 2.3, 3.4)
      .add_rect(SemanticLabel::Chair, "chair-s", 1.8, 0.6, 2.3, 1.1)
      .add_rect(SemanticLabel::Chair, "chair-e", 3.0, 1.75, 3.5, 2.25)
      .add_rect(SemanticLabel::Chair, "chair-w", 0.5, 1.75, 1.0, 2.25)
      .add_rect(SemanticLabel::Obstacle, "cabinet", 0.1, 3.3, 1.5, 3.9)
      .build();
}

Floorplan office_4() {
  return Room("office-4", PlanKind::Office)
      .rect_boundary(4.6, 3.4)
      .add_rect(SemanticLabel::Table, "desk-long", 0.1, 2.0, 1.9, 2.8)
      .add_rect(SemanticLabel::Table, "desk-side", 0.1, 0.8, 0.9, 2.0)
      .add_rect(SemanticLabel::Chair, "chair-1", 1.1, 1.25, 1.6, 1.75)
      .add_rect(SemanticLabel::Obstacle, "server-rack", 3.9, 0.1, 4.5, 1.3)
      .add_rect(SemanticLabel::Obstacle, "cabinet", 3.1, 2.9, 4.5, 3.3)
      .build();
}

Floorplan office_5() {
  return Room("office-5", PlanKind::Office)
      .rect_boundary(3.8, 3.2)
      .add_poly(SemanticLabel::Table, "table-1", octagon(1.8, 1.6, 0.62))
      .add_rect(SemanticLabel::Chair, "chair-1", 1.55, 2.35, 2.05, 2.85)
      .add_rect(SemanticLabel::Chair, "chair-2", 0.95, 0.75, 1.45, 1.25)
      .add_rect(SemanticLabel::Chair, "chair-3", 2.6, 1.35, 3.1, 1.85)
      .add_rect(SemanticLabel::Obstacle, "shelf", 0.1, 0.1, 0.5, 1.1)
      .build();
}

}  // namespace

eval::Corpus builtin_corpus(std::uint64_t seed) {
  (void)seed;  // reserved; the authored corpus is fixed
  eval::Corpus c;
  c.hosts = {meeting_room_1(), meeting_room_2(), meeting_room_3(), meeting_room_4()};
  c.homes = {home_1(), home_2(), home_3(), home_4(), home_5()};
  c.offices = {office_1(), office_2(), office_3(), office_4(), office_5()};
  return c;
}

void write_corpus(const std::string& dir, std::uint64_t seed) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ParseError("cannot create directory '" + dir + "'");
  const eval::Corpus c = builtin_corpus(seed);
  auto write_all = [&](const std::vector<plan::Floorplan>& plans) {
    for (const auto& fp : plans) plan::save_floorplan(fp, dir + "/" + fp.id + ".json");
  };
  write_all(c.hosts);
  write_all(c.homes);
  write_all(c.offices);
}

}  // namespace mutualspace::corpus
