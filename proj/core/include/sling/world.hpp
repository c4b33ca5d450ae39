#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sling/body.hpp"
#include "sling/events.hpp"

namespace sling::world {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoBirdsLeft : std::runtime_error {
  NoBirdsLeft() : std::runtime_error("bird queue is empty") {}
};
struct InvalidTap : std::runtime_error {
  InvalidTap() : std::runtime_error("no bird in flight (or tap already used)") {}
};
struct Unreachable : std::runtime_error {
  Unreachable() : std::runtime_error("target beyond ballistic reach") {}
};
struct OutOfSector : std::runtime_error {
  OutOfSector() : std::runtime_error("target not in front of the slingshot") {}
};

struct ScoreConfig {
  int pig_points = 5000;
  std::map<std::string, int> block_points = {
      {"wood", 500}, {"ice", 500}, {"stone", 500}};
  int unused_bird_points = 10000;
};

// Per-type tap ability parameters. Red has none.
struct BirdAbilities {
  double boost_factor = 1.6;       // Yellow
  int split_count = 3;             // Blue
  double split_spread = 0.15;      // rad
  double blast_radius = 40.0;      // Black
  double blast_strength = 200.0;
  double egg_speed = 300.0;        // White
  double egg_kick = 200.0;
};

struct Shot {
  double angle = 0.0;  // rad above horizontal, [0, pi/2]
  std::optional<double> tap_time;  // seconds since launch
};

struct Scene {
  std::vector<Body> bodies;
  Vec2 gravity{0.0, -100.0};
  Point2 slingshot;
  double launch_speed = 170.0;
  std::vector<BirdType> bird_queue;
  ScoreConfig scoring;
  BirdAbilities abilities;
  double time = 0.0;

  // Simulation bookkeeping.
  int next_id = 0;
  int quiet_steps = 0;
  int flying_bird = -1;  // body id, or -1
  bool tap_used = false;

  Body* find_body(int id);
  const Body* find_body(int id) const;
  int alive_pigs() const;
  double ground_y() const;
};

// Built-in material table; damage thresholds and scores are data, not code.
Material material_by_name(const std::string& name);
Material bird_material();

bool has_ability(BirdType t);
double bird_radius(BirdType t);
const char* bird_type_name(BirdType t);
std::optional<BirdType> bird_type_from_name(const std::string& name);

// Parses the line-oriented level format (see docs in README).
Scene load_level(std::istream& in);
Scene load_level_file(const std::string& path);

// Pops the bird queue and launches the head as an active projectile.
void launch(Scene& scene, const Shot& shot);

// Triggers the in-flight bird's ability. One tap per bird.
StepEvents tap(Scene& scene);

// Both launch angles whose point-mass trajectory passes through (dx, dy)
// relative to the launch point. low <= high.
std::pair<double, double> solve_launch_angles(double dx, double dy, double speed,
                                              double g);

int current_score(const Scene& scene);

enum class EpisodeState { Running, Won, Lost };
EpisodeState episode_state(const Scene& scene);

// Removes spent birds and eggs between shots (they vanish like in the game).
void clear_projectiles(Scene& scene);

}  // namespace sling::world
