#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "sling/render.hpp"
#include "sling/world.hpp"
#include "test_util.hpp"

using namespace sling;
using world::Scene;

namespace {

Scene ground_scene(double ground_y = 40.0) {
  Scene s;
  s.bodies.reserve(16);
  Body g;
  g.id = s.next_id++;
  g.kind = BodyKind::Ground;
  g.material = world::material_by_name("ground");
  g.shape = geom::OrientedRect{{0.0, ground_y - 1000.0}, 100000.0, 1000.0, 0.0};
  g.compute_mass();
  s.bodies.push_back(g);
  s.slingshot = {100.0, ground_y + 20.0};
  return s;
}

Body& add_block(Scene& s, const std::string& mat, const geom::OrientedRect& r) {
  Body b;
  b.id = s.next_id++;
  b.kind = BodyKind::Block;
  b.material = world::material_by_name(mat);
  b.shape = r;
  b.compute_mass();
  s.bodies.push_back(b);
  return s.bodies.back();
}

int count_class(const PixelGrid& g, std::uint8_t id) {
  int n = 0;
  for (std::uint8_t v : g.data) n += v == id;
  return n;
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name) : path(std::string("/tmp/") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("rasterize: ground-only scene is a clean two-band image") {
  Scene s = ground_scene(40.0);
  auto g = render::rasterize(s, 100, 100);
  // pixel center y = height - row - 0.5; ground occupies y <= 40
  for (int col = 0; col < 100; ++col) {
    CHECK(g.at(col, 59) == cls::kBackground);
    CHECK(g.at(col, 60) == cls::kGround);
    CHECK(g.at(col, 99) == cls::kGround);
  }
}

TEST_CASE("rasterize: aligned 40x20 block covers exactly 800 pixels") {
  Scene s = ground_scene(40.0);
  add_block(s, "wood", {{420.0, 240.0}, 20.0, 10.0, 0.0});
  auto g = render::rasterize(s);
  CHECK(count_class(g, cls::kWood) == 800);
}

TEST_CASE("rasterize: rotated block pixel count tracks its area") {
  Scene s = ground_scene(40.0);
  add_block(s, "stone", {{420.0, 240.0}, 30.0, 15.0, 30.0 * std::numbers::pi / 180.0});
  auto g = render::rasterize(s);
  double area = 60.0 * 30.0;
  CHECK(count_class(g, cls::kStone) > area * 0.98);
  CHECK(count_class(g, cls::kStone) < area * 1.02);
}

TEST_CASE("rasterize: painter's order puts higher ids on top") {
  Scene s = ground_scene(40.0);
  add_block(s, "wood", {{420.0, 240.0}, 20.0, 20.0, 0.0});
  add_block(s, "ice", {{420.0, 240.0}, 10.0, 10.0, 0.0});  // later id, inside
  auto g = render::rasterize(s);
  CHECK(g.at(420, 480 - 240) == cls::kIce);
  CHECK(g.at(420 - 15, 480 - 240) == cls::kWood);
  CHECK(count_class(g, cls::kIce) == 400);
  CHECK(count_class(g, cls::kWood) == 1600 - 400);
}

TEST_CASE("rasterize: dead bodies are not painted") {
  Scene s = ground_scene(40.0);
  Body& b = add_block(s, "wood", {{420.0, 240.0}, 20.0, 10.0, 0.0});
  b.alive = false;
  auto g = render::rasterize(s);
  CHECK(count_class(g, cls::kWood) == 0);
}

TEST_CASE("rasterize: slingshot marker and queued birds") {
  Scene s = ground_scene(40.0);
  s.slingshot = {100.0, 60.0};
  s.bird_queue = {BirdType::Red, BirdType::Black};
  auto g = render::rasterize(s);
  CHECK(count_class(g, cls::kSlingshot) == 64);  // 8x8 marker

  // next bird (red) sits leftmost of the two queue markers
  CHECK(count_class(g, cls::kBirdRed) > 0);
  CHECK(count_class(g, cls::kBirdBlack) > 0);
  int max_red = -1, min_black = 1 << 30;
  for (int row = 0; row < g.height; ++row) {
    for (int col = 0; col < g.width; ++col) {
      if (g.at(col, row) == cls::kBirdRed) max_red = std::max(max_red, col);
      if (g.at(col, row) == cls::kBirdBlack) min_black = std::min(min_black, col);
    }
  }
  CHECK(max_red < min_black);
  CHECK(min_black < 100);  // both left of the slingshot
}

TEST_CASE("classmap: bit-exact round trip") {
  TempFile f("sling_test_roundtrip.pgm");

  PixelGrid tiny(2, 2);
  tiny.at(0, 0) = 0;
  tiny.at(1, 0) = 5;
  tiny.at(0, 1) = 11;
  tiny.at(1, 1) = 2;
  render::write_classmap(tiny, f.path);
  auto back = render::read_classmap(f.path);
  CHECK(back.width == 2);
  CHECK(back.height == 2);
  CHECK(back.data == tiny.data);

  Scene s = ground_scene(40.0);
  add_block(s, "wood", {{300.0, 100.0}, 25.0, 8.0, 0.3});
  s.bird_queue = {BirdType::Yellow};
  auto g = render::rasterize(s);
  render::write_classmap(g, f.path);
  CHECK(render::read_classmap(f.path).data == g.data);
}

TEST_CASE("classmap: unknown class ids are rejected on read") {
  TempFile f("sling_test_badclass.pgm");
  std::ofstream out(f.path, std::ios::binary);
  out << "P5\n2 1\n255\n";
  char px[2] = {0, char(200)};
  out.write(px, 2);
  out.close();
  CHECK_THROWS_AS(render::read_classmap(f.path), render::IoError);
}

TEST_CASE("classmap: malformed headers and missing files are errors") {
  CHECK_THROWS_AS(render::read_classmap("/tmp/sling_no_such_file.pgm"),
                  render::IoError);
  TempFile f("sling_test_badmagic.pgm");
  std::ofstream(f.path) << "P2\n2 2\n255\n0 0 0 0\n";
  CHECK_THROWS_AS(render::read_classmap(f.path), render::IoError);

  TempFile t("sling_test_trunc.pgm");
  std::ofstream out(t.path, std::ios::binary);
  out << "P5\n4 4\n255\n";
  out.write("ab", 2);  // far too short
  out.close();
  CHECK_THROWS_AS(render::read_classmap(t.path), render::IoError);
}

TEST_CASE("write_image emits a well-formed PPM") {
  TempFile f("sling_test_img.ppm");
  PixelGrid g(3, 2);
  g.at(0, 0) = cls::kPig;
  render::write_image(g, render::default_palette(), f.path);
  std::ifstream in(f.path, std::ios::binary);
  std::string magic;
  int w, h, maxval;
  in >> magic >> w >> h >> maxval;
  CHECK(magic == "P6");
  CHECK(w == 3);
  CHECK(h == 2);
  in.get();
  std::vector<char> rgb(3 * 3 * 2);
  in.read(rgb.data(), rgb.size());
  CHECK(in.gcount() == static_cast<std::streamsize>(rgb.size()));
  auto pig = render::default_palette().colors[cls::kPig];
  CHECK(static_cast<std::uint8_t>(rgb[0]) == pig.r);
  CHECK(static_cast<std::uint8_t>(rgb[1]) == pig.g);
  CHECK(static_cast<std::uint8_t>(rgb[2]) == pig.b);
}

TEST_CASE("palette is bijective on used classes") {
  auto p = render::default_palette();
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& c : p.colors) seen.insert({c.r, c.g, c.b});
  CHECK(seen.size() == p.colors.size());
}

TEST_CASE("class_for_body covers every body kind") {
  Body b;
  b.kind = BodyKind::Pig;
  CHECK(render::class_for_body(b) == cls::kPig);
  b.kind = BodyKind::Ground;
  CHECK(render::class_for_body(b) == cls::kGround);
  b.kind = BodyKind::Block;
  b.material = world::material_by_name("ice");
  CHECK(render::class_for_body(b) == cls::kIce);
  b.kind = BodyKind::Projectile;
  b.bird_type = BirdType::White;
  CHECK(render::class_for_body(b) == cls::kBirdWhite);
  CHECK(render::bird_class(BirdType::Blue) == cls::kBirdBlue);
}
