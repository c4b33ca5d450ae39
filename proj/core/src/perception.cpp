#include "sling/perception.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "sling/render.hpp"

namespace sling::percept {

namespace {

std::int64_t pack(int col, int row) {
  return (static_cast<std::int64_t>(col) << 32) | static_cast<std::uint32_t>(row);
}

// Corners of the component's boundary pixels, in world coordinates.
// Pixel (col, row) covers x in [col, col+1], y in [H-row-1, H-row].
std::vector<Point2> boundary_corners(const geom::PixelSet& comp, int height) {
  std::unordered_set<std::int64_t> members;
  members.reserve(comp.pixels.size() * 2);
  for (auto [c, r] : comp.pixels) members.insert(pack(c, r));

  std::vector<Point2> pts;
  for (auto [c, r] : comp.pixels) {
    bool boundary = !members.count(pack(c + 1, r)) || !members.count(pack(c - 1, r)) ||
                    !members.count(pack(c, r + 1)) || !members.count(pack(c, r - 1));
    if (!boundary) continue;
    double x0 = c, x1 = c + 1.0;
    double y0 = height - r - 1.0, y1 = height - r;
    pts.push_back({x0, y0});
    pts.push_back({x1, y0});
    pts.push_back({x1, y1});
    pts.push_back({x0, y1});
  }
  return pts;
}

const char* material_for_class(std::uint8_t c) {
  switch (c) {
    case cls::kWood: return "wood";
    case cls::kIce: return "ice";
    case cls::kStone: return "stone";
    case cls::kPig: return "pig";
    default: return "";
  }
}

BirdType bird_for_class(std::uint8_t c) {
  switch (c) {
    case cls::kBirdYellow: return BirdType::Yellow;
    case cls::kBirdBlue: return BirdType::Blue;
    case cls::kBirdBlack: return BirdType::Black;
    case cls::kBirdWhite: return BirdType::White;
    default: return BirdType::Red;
  }
}

}  // namespace

ReconstructedScene perceive(const PixelGrid& grid, const PerceptionOptions& opts) {
  ReconstructedScene rec;
  rec.viewport_width = grid.width;
  rec.viewport_height = grid.height;

  // Solid objects, class by class. Pigs are circles by definition.
  struct Pending {
    geom::Hull hull;
    geom::OrientedRect rect;
    geom::ShapeKind kind;
    std::uint8_t class_id;
  };
  std::vector<Pending> pending;
  for (std::uint8_t c : {cls::kWood, cls::kIce, cls::kStone, cls::kPig}) {
    for (const auto& comp : geom::flood_fill_components(grid, c)) {
      if (static_cast<int>(comp.pixels.size()) < opts.min_pixels) continue;
      geom::Hull hull = geom::convex_hull(boundary_corners(comp, grid.height));
      geom::OrientedRect rect = geom::min_area_rect(hull);
      geom::ShapeKind kind = c == cls::kPig
                                 ? geom::ShapeKind::Circle
                                 : geom::classify_shape(hull, rect, opts.classify);
      pending.push_back({std::move(hull), rect, kind, c});
    }
  }

  // Equalize rectangle dimensions per material ("the game uses fixed sizes").
  for (std::uint8_t c : {cls::kWood, cls::kIce, cls::kStone}) {
    std::vector<std::size_t> idx;
    std::vector<geom::OrientedRect> rects;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (pending[i].class_id == c && pending[i].kind == geom::ShapeKind::Rectangle) {
        idx.push_back(i);
        rects.push_back(pending[i].rect);
      }
    }
    rects = geom::equalize_dimensions(rects, opts.equalize_rel_tol);
    for (std::size_t k = 0; k < idx.size(); ++k) pending[idx[k]].rect = rects[k];
  }

  for (auto& p : pending) {
    ReconstructedObject obj;
    obj.material = material_for_class(p.class_id);
    obj.kind = p.class_id == cls::kPig ? BodyKind::Pig : BodyKind::Block;
    if (p.kind == geom::ShapeKind::Circle) {
      obj.shape = geom::CircleShape{p.rect.center, geom::circle_radius_from_rect(p.rect)};
    } else {
      obj.shape = p.rect;
    }
    obj.hull = std::move(p.hull);
    rec.objects.push_back(std::move(obj));
  }

  // Ground: half-plane at the topmost ground pixel.
  int min_ground_row = grid.height;
  for (int row = 0; row < grid.height && min_ground_row == grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      if (grid.at(col, row) == cls::kGround) {
        min_ground_row = row;
        break;
      }
    }
  }
  rec.ground_y = min_ground_row < grid.height ? grid.height - min_ground_row : 0.0;
  if (min_ground_row == grid.height) rec.notes.push_back("no ground pixels found");

  // Slingshot: centroid of its marker pixels.
  double sx = 0.0, sy = 0.0;
  long count = 0;
  for (int row = 0; row < grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      if (grid.at(col, row) == cls::kSlingshot) {
        sx += col + 0.5;
        sy += grid.height - row - 0.5;
        ++count;
      }
    }
  }
  if (count == 0) throw PerceptionError("no slingshot found in image");
  rec.slingshot = {sx / count, sy / count};

  // Bird queue: bird blobs ordered by x, leftmost is next.
  struct Blob {
    double x;
    BirdType type;
  };
  std::vector<Blob> blobs;
  for (std::uint8_t c = cls::kBirdRed; c <= cls::kBirdWhite; ++c) {
    for (const auto& comp : geom::flood_fill_components(grid, c)) {
      if (static_cast<int>(comp.pixels.size()) < opts.min_pixels) continue;
      double cx = 0.0;
      for (auto [col, row] : comp.pixels) cx += col + 0.5;
      blobs.push_back({cx / comp.pixels.size(), bird_for_class(c)});
    }
  }
  std::stable_sort(blobs.begin(), blobs.end(),
                   [](const Blob& a, const Blob& b) { return a.x < b.x; });
  for (const Blob& b : blobs) rec.bird_queue.push_back(b.type);

  return rec;
}

world::Scene to_scene(const ReconstructedScene& rec, const SceneTemplate& tmpl) {
  world::Scene scene;
  scene.gravity = tmpl.gravity;
  scene.launch_speed = tmpl.launch_speed;
  scene.scoring = tmpl.scoring;
  scene.abilities = tmpl.abilities;
  scene.slingshot = rec.slingshot;
  scene.bird_queue = rec.bird_queue;

  Body ground;
  ground.id = scene.next_id++;
  ground.kind = BodyKind::Ground;
  ground.material = world::material_by_name("ground");
  ground.shape = geom::OrientedRect{{0.0, rec.ground_y - 1000.0}, 100000.0, 1000.0, 0.0};
  ground.compute_mass();
  scene.bodies.push_back(std::move(ground));

  for (const ReconstructedObject& obj : rec.objects) {
    Body b;
    b.id = scene.next_id++;
    b.kind = obj.kind;
    b.material = world::material_by_name(obj.material);
    b.shape = obj.shape;
    b.active = false;
    b.compute_mass();
    if (b.kind == BodyKind::Pig) {
      b.material.break_score = tmpl.scoring.pig_points;
    } else {
      auto it = tmpl.scoring.block_points.find(b.material.name);
      if (it != tmpl.scoring.block_points.end()) b.material.break_score = it->second;
    }
    scene.bodies.push_back(std::move(b));
  }
  return scene;
}

std::string describe(const ReconstructedScene& rec) {
  std::ostringstream out;
  out << "viewport " << rec.viewport_width << "x" << rec.viewport_height << "\n";
  out << "ground_y " << rec.ground_y << "\n";
  out << "slingshot " << rec.slingshot.x << " " << rec.slingshot.y << "\n";
  out << "birds";
  for (BirdType t : rec.bird_queue) out << " " << world::bird_type_name(t);
  out << "\n";
  out << "objects " << rec.objects.size() << "\n";
  for (const auto& obj : rec.objects) {
    if (const auto* r = std::get_if<geom::OrientedRect>(&obj.shape)) {
      out << "  rect " << obj.material << " center " << r->center.x << " "
          << r->center.y << " half " << r->half_w << " " << r->half_h
          << " angle " << r->angle << "\n";
    } else {
      const auto& c = std::get<geom::CircleShape>(obj.shape);
      out << "  circle " << obj.material << " center " << c.center.x << " "
          << c.center.y << " r " << c.radius << "\n";
    }
  }
  return out.str();
}

}  // namespace sling::percept
