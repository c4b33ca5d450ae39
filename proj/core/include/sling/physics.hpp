#pragma once

#include <cstdint>

#include "sling/events.hpp"
#include "sling/world.hpp"

namespace sling::phys {

struct StepConfig {
  double dt = 1.0 / 60.0;
  int solver_passes = 4;
  double position_correction = 0.8;  // fraction of penetration removed
  double slop = 0.01;                // penetration tolerated without correction
  double restitution_threshold = 1.0;  // |vn| below this bounces inelastically
  double rolling_friction = 0.1;       // disc rolling-resistance coefficient
  double v_sleep = 0.5;
  double w_sleep = 0.05;
  int sleep_frames = 30;
  double explosion_damage_factor = 0.1;  // damage per unit of blast impulse
};

struct ContactPoint {
  Point2 point;
  double penetration = 0.0;
};

// Normal points from body a to body b.
struct Contact {
  int a = -1;
  int b = -1;
  Vec2 normal;
  ContactPoint points[2];
  int point_count = 0;
};

// Advances the scene one fixed timestep. Phases, in order: integrate active
// bodies, detect contacts, transmit activation, resolve, damage, destroy.
StepEvents step(world::Scene& scene, double dt, const StepConfig& cfg = {});

// True when every active body has been below the sleep thresholds for
// sleep_frames consecutive steps (vacuously true with no active bodies).
bool is_settled(const world::Scene& scene, const StepConfig& cfg = {});

// Outward impulse with linear falloff; everything hit becomes active and
// takes damage proportional to the received impulse.
StepEvents apply_radial_impulse(world::Scene& scene, Point2 center, double radius,
                                double strength, const StepConfig& cfg = {});

// Order-sensitive hash of all body state; equal states hash equal bitwise.
std::uint64_t state_hash(const world::Scene& scene);

// Contact generation, exposed for tests.
bool collide(const Body& a, const Body& b, Contact& out);

}  // namespace sling::phys
