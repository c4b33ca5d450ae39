#pragma once

#include <string>
#include <variant>

#include "sling/geometry.hpp"
#include "sling/vec2.hpp"

namespace sling {

enum class BirdType { Red, Yellow, Blue, Black, White };

struct Material {
  std::string name;
  double density = 1.0;       // mass per area
  double restitution = 0.2;   // [0, 1]
  double friction = 0.5;
  double health = 100.0;      // damage capacity
  double damage_threshold = 10.0;  // impulse below this does no damage
  int break_score = 0;
};

enum class BodyKind { Block, Pig, Bird, Ground, Projectile };

using Shape = std::variant<geom::OrientedRect, geom::CircleShape>;

inline double shape_area(const Shape& s) {
  if (const auto* r = std::get_if<geom::OrientedRect>(&s)) {
    return 4.0 * r->half_w * r->half_h;
  }
  const auto& c = std::get<geom::CircleShape>(s);
  return 3.14159265358979323846 * c.radius * c.radius;
}

inline Point2 shape_center(const Shape& s) {
  if (const auto* r = std::get_if<geom::OrientedRect>(&s)) return r->center;
  return std::get<geom::CircleShape>(s).center;
}

inline void set_shape_center(Shape& s, Point2 p) {
  if (auto* r = std::get_if<geom::OrientedRect>(&s)) {
    r->center = p;
  } else {
    std::get<geom::CircleShape>(s).center = p;
  }
}

struct Body {
  int id = -1;
  Shape shape;
  Material material;
  BodyKind kind = BodyKind::Block;
  BirdType bird_type = BirdType::Red;  // meaningful for Bird/Projectile only
  Vec2 velocity;
  double angular_velocity = 0.0;
  double damage = 0.0;
  bool active = false;
  bool alive = true;

  // Cached on construction; Ground is immovable.
  double inv_mass = 0.0;
  double inv_inertia = 0.0;

  Point2 center() const { return shape_center(shape); }
  void set_center(Point2 p) { set_shape_center(shape, p); }

  void compute_mass() {
    if (kind == BodyKind::Ground) {
      inv_mass = 0.0;
      inv_inertia = 0.0;
      return;
    }
    double m = material.density * shape_area(shape);
    inv_mass = m > 0.0 ? 1.0 / m : 0.0;
    double inertia;
    if (const auto* r = std::get_if<geom::OrientedRect>(&shape)) {
      // half-extents: I = m (w^2 + h^2) / 3
      inertia = m * (r->half_w * r->half_w + r->half_h * r->half_h) / 3.0;
    } else {
      double rad = std::get<geom::CircleShape>(shape).radius;
      inertia = m * rad * rad / 2.0;
    }
    inv_inertia = inertia > 0.0 ? 1.0 / inertia : 0.0;
  }
};

}  // namespace sling
