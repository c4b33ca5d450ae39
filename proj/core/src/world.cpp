#include "sling/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "sling/physics.hpp"

namespace sling::world {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGroundHalfH = 1000.0;
constexpr double kGroundHalfW = 100000.0;
}  // namespace

Body* Scene::find_body(int id) {
  for (Body& b : bodies) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

const Body* Scene::find_body(int id) const {
  return const_cast<Scene*>(this)->find_body(id);
}

int Scene::alive_pigs() const {
  int n = 0;
  for (const Body& b : bodies) {
    if (b.alive && b.kind == BodyKind::Pig) ++n;
  }
  return n;
}

double Scene::ground_y() const {
  for (const Body& b : bodies) {
    if (b.kind == BodyKind::Ground) {
      const auto& r = std::get<geom::OrientedRect>(b.shape);
      return r.center.y + r.half_h;
    }
  }
  return 0.0;
}

Material material_by_name(const std::string& name) {
  // Densities keep typical masses near 1 so contact impulses land in the
  // same range as the damage thresholds (a full-speed bird hit is ~50-100).
  if (name == "wood") return {"wood", 0.001, 0.2, 0.6, 60.0, 15.0, 500};
  if (name == "ice") return {"ice", 0.0009, 0.1, 0.3, 25.0, 5.0, 500};
  if (name == "stone") return {"stone", 0.0025, 0.1, 0.7, 150.0, 40.0, 500};
  if (name == "pig") return {"pig", 0.0008, 0.3, 0.4, 10.0, 3.0, 5000};
  if (name == "ground") return {"ground", 0.001, 0.3, 0.9, kInf, kInf, 0};
  throw ParseError("unknown material: " + name);
}

Material bird_material() { return {"bird", 0.0012, 0.4, 0.5, kInf, kInf, 0}; }

bool has_ability(BirdType t) { return t != BirdType::Red; }

double bird_radius(BirdType t) {
  switch (t) {
    case BirdType::Red: return 10.0;
    case BirdType::Yellow: return 9.0;
    case BirdType::Blue: return 6.0;
    case BirdType::Black: return 12.0;
    case BirdType::White: return 11.0;
  }
  return 10.0;
}

const char* bird_type_name(BirdType t) {
  switch (t) {
    case BirdType::Red: return "red";
    case BirdType::Yellow: return "yellow";
    case BirdType::Blue: return "blue";
    case BirdType::Black: return "black";
    case BirdType::White: return "white";
  }
  return "red";
}

std::optional<BirdType> bird_type_from_name(const std::string& name) {
  if (name == "red") return BirdType::Red;
  if (name == "yellow") return BirdType::Yellow;
  if (name == "blue") return BirdType::Blue;
  if (name == "black") return BirdType::Black;
  if (name == "white") return BirdType::White;
  return std::nullopt;
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

double num(const std::string& tok, int line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) fail(line, "bad number: " + tok);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    fail(line, "bad number: " + tok);
  }
}

Body make_block(const std::string& mat, Shape shape, int id) {
  Body b;
  b.id = id;
  b.kind = BodyKind::Block;
  b.material = material_by_name(mat);
  b.shape = std::move(shape);
  b.compute_mass();
  return b;
}

}  // namespace

Scene load_level(std::istream& in) {
  Scene scene;
  int seen_gravity = 0, seen_sling = 0, seen_speed = 0, seen_ground = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string& kw = tok[0];
    if (kw == "gravity") {
      if (tok.size() != 3) fail(lineno, "gravity gx gy");
      scene.gravity = {num(tok[1], lineno), num(tok[2], lineno)};
      ++seen_gravity;
    } else if (kw == "slingshot") {
      if (tok.size() != 3) fail(lineno, "slingshot x y");
      scene.slingshot = {num(tok[1], lineno), num(tok[2], lineno)};
      ++seen_sling;
    } else if (kw == "speed") {
      if (tok.size() != 2) fail(lineno, "speed v");
      scene.launch_speed = num(tok[1], lineno);
      ++seen_speed;
    } else if (kw == "score") {
      std::size_t i = 1;
      while (i < tok.size()) {
        if (tok[i] == "pig" && i + 1 < tok.size()) {
          scene.scoring.pig_points = static_cast<int>(num(tok[i + 1], lineno));
          i += 2;
        } else if (tok[i] == "block" && i + 2 < tok.size()) {
          scene.scoring.block_points[tok[i + 1]] =
              static_cast<int>(num(tok[i + 2], lineno));
          i += 3;
        } else if (tok[i] == "bird" && i + 1 < tok.size()) {
          scene.scoring.unused_bird_points =
              static_cast<int>(num(tok[i + 1], lineno));
          i += 2;
        } else {
          fail(lineno, "bad score entry: " + tok[i]);
        }
      }
    } else if (kw == "bird") {
      if (tok.size() != 2) fail(lineno, "bird TYPE");
      auto t = bird_type_from_name(tok[1]);
      if (!t) fail(lineno, "unknown bird type: " + tok[1]);
      scene.bird_queue.push_back(*t);
    } else if (kw == "ground") {
      if (tok.size() != 2) fail(lineno, "ground y");
      double y = num(tok[1], lineno);
      Body g;
      g.id = scene.next_id++;
      g.kind = BodyKind::Ground;
      g.material = material_by_name("ground");
      g.shape = geom::OrientedRect{{0.0, y - kGroundHalfH}, kGroundHalfW,
                                   kGroundHalfH, 0.0};
      g.compute_mass();
      scene.bodies.push_back(std::move(g));
      ++seen_ground;
    } else if (kw == "block") {
      if (tok.size() < 3) fail(lineno, "block MATERIAL rect|circle ...");
      const std::string& mat = tok[1];
      if (mat != "wood" && mat != "ice" && mat != "stone") {
        fail(lineno, "unknown block material: " + mat);
      }
      if (tok[2] == "rect") {
        if (tok.size() != 8) fail(lineno, "block MATERIAL rect cx cy w h angle_deg");
        geom::OrientedRect r;
        r.center = {num(tok[3], lineno), num(tok[4], lineno)};
        r.half_w = num(tok[5], lineno) / 2.0;
        r.half_h = num(tok[6], lineno) / 2.0;
        r.angle = num(tok[7], lineno) * std::numbers::pi / 180.0;
        scene.bodies.push_back(make_block(mat, r, scene.next_id++));
      } else if (tok[2] == "circle") {
        if (tok.size() != 6) fail(lineno, "block MATERIAL circle cx cy r");
        geom::CircleShape c{{num(tok[3], lineno), num(tok[4], lineno)},
                            num(tok[5], lineno)};
        scene.bodies.push_back(make_block(mat, c, scene.next_id++));
      } else {
        fail(lineno, "block shape must be rect or circle");
      }
    } else if (kw == "pig") {
      if (tok.size() != 4) fail(lineno, "pig cx cy r");
      Body p;
      p.id = scene.next_id++;
      p.kind = BodyKind::Pig;
      p.material = material_by_name("pig");
      p.shape = geom::CircleShape{{num(tok[1], lineno), num(tok[2], lineno)},
                                  num(tok[3], lineno)};
      p.compute_mass();
      scene.bodies.push_back(std::move(p));
    } else {
      fail(lineno, "unknown directive: " + kw);
    }
  }

  if (seen_ground != 1) throw ParseError("level needs exactly one ground line");
  if (seen_gravity != 1) throw ParseError("level needs exactly one gravity line");
  if (seen_sling != 1) throw ParseError("level needs exactly one slingshot line");
  if (seen_speed != 1) throw ParseError("level needs exactly one speed line");
  bool has_pig = false;
  for (const Body& b : scene.bodies) has_pig |= b.kind == BodyKind::Pig;
  if (!has_pig) throw ParseError("level has no pigs");
  if (scene.bird_queue.empty()) throw ParseError("level has no birds");

  // Scoring is level data; stamp it onto the break scores.
  for (Body& b : scene.bodies) {
    if (b.kind == BodyKind::Pig) {
      b.material.break_score = scene.scoring.pig_points;
    } else if (b.kind == BodyKind::Block) {
      auto it = scene.scoring.block_points.find(b.material.name);
      if (it != scene.scoring.block_points.end()) b.material.break_score = it->second;
    }
  }
  return scene;
}

Scene load_level_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open level file: " + path);
  return load_level(in);
}

void launch(Scene& scene, const Shot& shot) {
  if (scene.bird_queue.empty()) throw NoBirdsLeft();
  if (scene.flying_bird != -1) {
    throw std::logic_error("a bird is already in flight");
  }
  BirdType type = scene.bird_queue.front();
  scene.bird_queue.erase(scene.bird_queue.begin());

  Body bird;
  bird.id = scene.next_id++;
  bird.kind = BodyKind::Projectile;
  bird.bird_type = type;
  bird.material = bird_material();
  bird.shape = geom::CircleShape{scene.slingshot, bird_radius(type)};
  bird.velocity = {scene.launch_speed * std::cos(shot.angle),
                   scene.launch_speed * std::sin(shot.angle)};
  bird.active = true;
  bird.compute_mass();
  scene.flying_bird = bird.id;
  scene.tap_used = false;
  scene.quiet_steps = 0;
  scene.bodies.push_back(std::move(bird));
}

StepEvents tap(Scene& scene) {
  Body* bird = scene.flying_bird >= 0 ? scene.find_body(scene.flying_bird) : nullptr;
  if (!bird || !bird->alive || scene.tap_used) throw InvalidTap();
  scene.tap_used = true;

  StepEvents ev;
  const BirdAbilities& ab = scene.abilities;
  switch (bird->bird_type) {
    case BirdType::Red:
      break;
    case BirdType::Yellow:
      bird->velocity *= ab.boost_factor;
      break;
    case BirdType::Blue: {
      double speed = bird->velocity.length();
      double heading = std::atan2(bird->velocity.y, bird->velocity.x);
      int n = ab.split_count;
      for (int k = 0; k < n; ++k) {
        double offset = n > 1
            ? ab.split_spread * (2.0 * k / (n - 1) - 1.0)
            : 0.0;
        double a = heading + offset;
        Vec2 v{speed * std::cos(a), speed * std::sin(a)};
        if (k == (n - 1) / 2) {
          bird->velocity = v;
        } else {
          Body child = *bird;
          child.id = scene.next_id++;
          child.velocity = v;
          scene.bodies.push_back(std::move(child));
          bird = scene.find_body(scene.flying_bird);  // vector may reallocate
        }
      }
      break;
    }
    case BirdType::Black: {
      Point2 c = bird->center();
      ev = phys::apply_radial_impulse(scene, c, ab.blast_radius, ab.blast_strength);
      bird = scene.find_body(scene.flying_bird);
      bird->alive = false;
      ev.destroyed.push_back({bird->id, 0});
      break;
    }
    case BirdType::White: {
      Body egg;
      egg.id = scene.next_id++;
      egg.kind = BodyKind::Projectile;
      egg.bird_type = BirdType::White;
      egg.material = bird_material();
      egg.shape = geom::CircleShape{bird->center() - Vec2{0.0, bird_radius(BirdType::White) + 6.0},
                                    5.0};
      egg.velocity = {0.0, -ab.egg_speed};
      egg.active = true;
      egg.compute_mass();
      scene.bodies.push_back(std::move(egg));
      bird = scene.find_body(scene.flying_bird);
      bird->velocity += Vec2{0.0, ab.egg_kick};
      break;
    }
  }
  return ev;
}

std::pair<double, double> solve_launch_angles(double dx, double dy, double speed,
                                              double g) {
  if (dx <= 0.0) throw OutOfSector();
  double v2 = speed * speed;
  double disc = v2 * v2 - g * (g * dx * dx + 2.0 * dy * v2);
  if (disc < 0.0) throw Unreachable();
  double root = std::sqrt(disc);
  double t_low = (v2 - root) / (g * dx);
  double t_high = (v2 + root) / (g * dx);
  return {std::atan(t_low), std::atan(t_high)};
}

int current_score(const Scene& scene) {
  int score = 0;
  int pigs_alive = 0;
  for (const Body& b : scene.bodies) {
    if (b.kind == BodyKind::Pig) {
      if (b.alive) {
        ++pigs_alive;
      } else {
        score += scene.scoring.pig_points;
      }
    } else if (b.kind == BodyKind::Block && !b.alive) {
      auto it = scene.scoring.block_points.find(b.material.name);
      if (it != scene.scoring.block_points.end()) score += it->second;
    }
  }
  if (pigs_alive == 0) {
    score += scene.scoring.unused_bird_points *
             static_cast<int>(scene.bird_queue.size());
  }
  return score;
}

EpisodeState episode_state(const Scene& scene) {
  if (scene.alive_pigs() == 0) return EpisodeState::Won;
  if (scene.bird_queue.empty() && scene.flying_bird == -1) {
    return EpisodeState::Lost;
  }
  return EpisodeState::Running;
}

void clear_projectiles(Scene& scene) {
  std::erase_if(scene.bodies,
                [](const Body& b) { return b.kind == BodyKind::Projectile; });
  scene.flying_bird = -1;
  scene.tap_used = false;
}

}  // namespace sling::world
