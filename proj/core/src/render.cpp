#include "sling/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace sling::render {

Palette default_palette() {
  Palette p;
  p.colors[cls::kBackground] = {180, 210, 240};
  p.colors[cls::kGround] = {90, 60, 30};
  p.colors[cls::kWood] = {190, 140, 60};
  p.colors[cls::kIce] = {150, 220, 250};
  p.colors[cls::kStone] = {130, 130, 130};
  p.colors[cls::kPig] = {80, 200, 80};
  p.colors[cls::kBirdRed] = {220, 40, 40};
  p.colors[cls::kBirdYellow] = {240, 210, 40};
  p.colors[cls::kBirdBlue] = {60, 120, 230};
  p.colors[cls::kBirdBlack] = {40, 40, 40};
  p.colors[cls::kBirdWhite] = {245, 245, 245};
  p.colors[cls::kSlingshot] = {120, 70, 110};
  return p;
}

std::uint8_t bird_class(BirdType t) {
  switch (t) {
    case BirdType::Red: return cls::kBirdRed;
    case BirdType::Yellow: return cls::kBirdYellow;
    case BirdType::Blue: return cls::kBirdBlue;
    case BirdType::Black: return cls::kBirdBlack;
    case BirdType::White: return cls::kBirdWhite;
  }
  return cls::kBirdRed;
}

std::uint8_t class_for_body(const Body& body) {
  switch (body.kind) {
    case BodyKind::Ground:
      return cls::kGround;
    case BodyKind::Pig:
      return cls::kPig;
    case BodyKind::Bird:
    case BodyKind::Projectile:
      return bird_class(body.bird_type);
    case BodyKind::Block:
      if (body.material.name == "wood") return cls::kWood;
      if (body.material.name == "ice") return cls::kIce;
      return cls::kStone;
  }
  return cls::kBackground;
}

namespace {

struct Viewport {
  int width, height;
  // Pixel (col, row) center in world coordinates.
  Point2 pixel_center(int col, int row) const {
    return {col + 0.5, height - row - 0.5};
  }
};

bool inside_rect(const geom::OrientedRect& r, Point2 p) {
  Vec2 u{std::cos(r.angle), std::sin(r.angle)};
  Vec2 d = p - r.center;
  return std::abs(dot(d, u)) <= r.half_w && std::abs(dot(d, u.perp())) <= r.half_h;
}

void paint_shape(PixelGrid& grid, const Viewport& vp, const Shape& shape,
                 std::uint8_t id) {
  double min_x, max_x, min_y, max_y;
  if (const auto* r = std::get_if<geom::OrientedRect>(&shape)) {
    double rad = std::hypot(r->half_w, r->half_h);
    min_x = r->center.x - rad;
    max_x = r->center.x + rad;
    min_y = r->center.y - rad;
    max_y = r->center.y + rad;
  } else {
    const auto& c = std::get<geom::CircleShape>(shape);
    min_x = c.center.x - c.radius;
    max_x = c.center.x + c.radius;
    min_y = c.center.y - c.radius;
    max_y = c.center.y + c.radius;
  }
  int c0 = std::max(0, static_cast<int>(std::floor(min_x)));
  int c1 = std::min(vp.width - 1, static_cast<int>(std::ceil(max_x)));
  int r0 = std::max(0, static_cast<int>(std::floor(vp.height - max_y - 1.0)));
  int r1 = std::min(vp.height - 1, static_cast<int>(std::ceil(vp.height - min_y)));

  const auto* rect = std::get_if<geom::OrientedRect>(&shape);
  const auto* circ = std::get_if<geom::CircleShape>(&shape);
  for (int row = r0; row <= r1; ++row) {
    for (int col = c0; col <= c1; ++col) {
      Point2 p = vp.pixel_center(col, row);
      bool in = rect ? inside_rect(*rect, p)
                     : (p - circ->center).length_sq() <= circ->radius * circ->radius;
      if (in) grid.at(col, row) = id;
    }
  }
}

}  // namespace

PixelGrid rasterize(const world::Scene& scene, int width, int height) {
  PixelGrid grid(width, height);
  Viewport vp{width, height};

  for (const Body& body : scene.bodies) {
    if (!body.alive) continue;
    paint_shape(grid, vp, body.shape, class_for_body(body));
  }

  // Slingshot marker: 8x8 block centered on the launch point.
  paint_shape(grid, vp, geom::OrientedRect{scene.slingshot, 4.0, 4.0, 0.0},
              cls::kSlingshot);

  // Queued birds sit to the left of the slingshot, next bird leftmost.
  const double ground = scene.ground_y();
  const int n = static_cast<int>(scene.bird_queue.size());
  for (int i = 0; i < n; ++i) {
    Point2 c{scene.slingshot.x - 24.0 * (n - i), ground + 7.0};
    paint_shape(grid, vp, geom::CircleShape{c, 7.0}, bird_class(scene.bird_queue[i]));
  }
  return grid;
}

void write_classmap(const PixelGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "P5\n" << grid.width << " " << grid.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(grid.data.data()),
            static_cast<std::streamsize>(grid.data.size()));
  if (!out) throw IoError("write failed: " + path);
}

PixelGrid read_classmap(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (magic != "P5" || w <= 0 || h <= 0 || maxval != 255) {
    throw IoError("malformed classmap header: " + path);
  }
  in.get();  // single whitespace after header
  PixelGrid grid(w, h);
  in.read(reinterpret_cast<char*>(grid.data.data()),
          static_cast<std::streamsize>(grid.data.size()));
  if (!in) throw IoError("truncated classmap: " + path);
  for (std::uint8_t v : grid.data) {
    if (v > cls::kMax) throw IoError("unknown class id in classmap: " + path);
  }
  return grid;
}

void write_image(const PixelGrid& grid, const Palette& palette,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "P6\n" << grid.width << " " << grid.height << "\n255\n";
  std::vector<std::uint8_t> row(static_cast<std::size_t>(grid.width) * 3);
  for (int r = 0; r < grid.height; ++r) {
    for (int c = 0; c < grid.width; ++c) {
      Rgb rgb = palette.colors[grid.at(c, r)];
      row[3 * c] = rgb.r;
      row[3 * c + 1] = rgb.g;
      row[3 * c + 2] = rgb.b;
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace sling::render
