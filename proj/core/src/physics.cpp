#include "sling/physics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace sling::phys {

namespace {

struct BoxFrame {
  Point2 c;
  Vec2 u1, u2;  // local axes in world space
  double hw, hh;
};

BoxFrame frame_of(const geom::OrientedRect& r) {
  Vec2 u{std::cos(r.angle), std::sin(r.angle)};
  return {r.center, u, u.perp(), r.half_w, r.half_h};
}

double projection_radius(const BoxFrame& f, const Vec2& axis) {
  return f.hw * std::abs(dot(f.u1, axis)) + f.hh * std::abs(dot(f.u2, axis));
}

struct ClipVertex {
  Point2 p;
};

// Clips a segment to the half-plane dot(t, x) <= offset.
int clip_segment(const Vec2& t, double offset, const ClipVertex in[2],
                 ClipVertex out[2]) {
  int n = 0;
  double d0 = dot(t, in[0].p) - offset;
  double d1 = dot(t, in[1].p) - offset;
  if (d0 <= 0.0) out[n++] = in[0];
  if (d1 <= 0.0) out[n++] = in[1];
  if (d0 * d1 < 0.0) {
    double s = d0 / (d0 - d1);
    out[n++].p = in[0].p + (in[1].p - in[0].p) * s;
  }
  return n;
}

// The two corners of the box face whose outward normal is most anti-parallel
// to `n`.
void incident_face(const BoxFrame& f, const Vec2& n, ClipVertex out[2]) {
  double d1 = dot(f.u1, n);
  double d2 = dot(f.u2, n);
  Vec2 face_n;
  Vec2 side;
  double ext, side_ext;
  if (std::abs(d1) > std::abs(d2)) {
    face_n = d1 > 0.0 ? -f.u1 : f.u1;
    side = f.u2;
    ext = f.hw;
    side_ext = f.hh;
  } else {
    face_n = d2 > 0.0 ? -f.u2 : f.u2;
    side = f.u1;
    ext = f.hh;
    side_ext = f.hw;
  }
  Point2 mid = f.c + face_n * ext;
  out[0].p = mid - side * side_ext;
  out[1].p = mid + side * side_ext;
}

bool collide_box_box(const geom::OrientedRect& ra, const geom::OrientedRect& rb,
                     Contact& out) {
  BoxFrame fa = frame_of(ra);
  BoxFrame fb = frame_of(rb);
  Vec2 d = fb.c - fa.c;

  const Vec2 axes[4] = {fa.u1, fa.u2, fb.u1, fb.u2};
  double best_overlap = std::numeric_limits<double>::infinity();
  int best_axis = -1;
  for (int i = 0; i < 4; ++i) {
    double overlap =
        projection_radius(fa, axes[i]) + projection_radius(fb, axes[i]) -
        std::abs(dot(d, axes[i]));
    if (overlap < 0.0) return false;
    if (overlap < best_overlap) {
      best_overlap = overlap;
      best_axis = i;
    }
  }

  const bool ref_is_a = best_axis < 2;
  const BoxFrame& ref = ref_is_a ? fa : fb;
  const BoxFrame& inc = ref_is_a ? fb : fa;

  // Face normal on the reference box pointing toward the incident box.
  Vec2 n = axes[best_axis];
  Vec2 ref_to_inc = inc.c - ref.c;
  if (dot(n, ref_to_inc) < 0.0) n = -n;

  double ref_ext = (best_axis % 2 == 0) ? ref.hw : ref.hh;
  Vec2 side = (best_axis % 2 == 0) ? ref.u2 : ref.u1;
  double side_ext = (best_axis % 2 == 0) ? ref.hh : ref.hw;

  ClipVertex incident[2];
  incident_face(inc, n, incident);

  ClipVertex clip1[2], clip2[2];
  double side_off = dot(side, ref.c);
  if (clip_segment(side, side_off + side_ext, incident, clip1) < 2) return false;
  if (clip_segment(-side, -(side_off - side_ext), clip1, clip2) < 2) return false;

  double face_off = dot(n, ref.c) + ref_ext;
  out.point_count = 0;
  for (int i = 0; i < 2; ++i) {
    double separation = dot(n, clip2[i].p) - face_off;
    if (separation <= 0.0) {
      auto& cp = out.points[out.point_count++];
      cp.point = clip2[i].p;
      cp.penetration = -separation;
    }
  }
  if (out.point_count == 0) return false;
  out.normal = ref_is_a ? n : -n;  // from a to b
  return true;
}

bool collide_circle_circle(const geom::CircleShape& ca, const geom::CircleShape& cb,
                           Contact& out) {
  Vec2 d = cb.center - ca.center;
  double dist = d.length();
  double pen = ca.radius + cb.radius - dist;
  if (pen <= 0.0) return false;
  Vec2 n = dist > 0.0 ? d / dist : Vec2{0.0, 1.0};
  out.normal = n;
  out.point_count = 1;
  out.points[0].point = ca.center + n * (ca.radius - pen / 2.0);
  out.points[0].penetration = pen;
  return true;
}

// Normal points from the box toward the circle.
bool collide_box_circle(const geom::OrientedRect& rb, const geom::CircleShape& c,
                        Contact& out) {
  BoxFrame f = frame_of(rb);
  Vec2 d = c.center - f.c;
  double lx = dot(d, f.u1);
  double ly = dot(d, f.u2);
  double cx = std::clamp(lx, -f.hw, f.hw);
  double cy = std::clamp(ly, -f.hh, f.hh);

  Vec2 n;
  double pen;
  Point2 point;
  if (lx == cx && ly == cy) {
    // center inside the box: push out along the shallower axis
    double px = f.hw - std::abs(lx);
    double py = f.hh - std::abs(ly);
    if (px < py) {
      n = lx >= 0.0 ? f.u1 : -f.u1;
      pen = c.radius + px;
    } else {
      n = ly >= 0.0 ? f.u2 : -f.u2;
      pen = c.radius + py;
    }
    point = c.center;
  } else {
    Point2 closest = f.c + f.u1 * cx + f.u2 * cy;
    Vec2 diff = c.center - closest;
    double dist = diff.length();
    if (dist >= c.radius) return false;
    n = diff / dist;
    pen = c.radius - dist;
    point = closest;
  }
  out.normal = n;
  out.point_count = 1;
  out.points[0].point = point;
  out.points[0].penetration = pen;
  return true;
}

}  // namespace

bool collide(const Body& a, const Body& b, Contact& out) {
  out.a = a.id;
  out.b = b.id;
  const auto* ra = std::get_if<geom::OrientedRect>(&a.shape);
  const auto* rb = std::get_if<geom::OrientedRect>(&b.shape);
  if (ra && rb) return collide_box_box(*ra, *rb, out);
  if (!ra && !rb) {
    return collide_circle_circle(std::get<geom::CircleShape>(a.shape),
                                 std::get<geom::CircleShape>(b.shape), out);
  }
  if (ra) {
    return collide_box_circle(*ra, std::get<geom::CircleShape>(b.shape), out);
  }
  bool hit = collide_box_circle(*rb, std::get<geom::CircleShape>(a.shape), out);
  if (hit) out.normal = -out.normal;  // keep the a -> b orientation
  return hit;
}

namespace {

void integrate(world::Scene& scene, double dt) {
  for (Body& body : scene.bodies) {
    if (!body.alive || !body.active || body.inv_mass == 0.0) continue;
    body.velocity += scene.gravity * dt;
    body.set_center(body.center() + body.velocity * dt);
    if (auto* r = std::get_if<geom::OrientedRect>(&body.shape)) {
      r->angle += body.angular_velocity * dt;
    }
  }
}

Vec2 velocity_at(const Body& b, const Vec2& r) {
  return b.velocity + cross(b.angular_velocity, r);
}

void apply_impulse(Body& b, const Vec2& j, const Vec2& r) {
  b.velocity += j * b.inv_mass;
  b.angular_velocity += b.inv_inertia * cross(r, j);
}

struct SolvedContact {
  Contact c;
  double restitution;
  double friction;
  double accum_normal[2] = {0.0, 0.0};
};

void solve_velocity(world::Scene& scene, std::vector<SolvedContact>& contacts,
                    const StepConfig& cfg) {
  for (int pass = 0; pass < cfg.solver_passes; ++pass) {
    for (auto& sc : contacts) {
      Body& a = *scene.find_body(sc.c.a);
      Body& b = *scene.find_body(sc.c.b);
      const Vec2 n = sc.c.normal;
      const Vec2 t = n.perp();
      for (int i = 0; i < sc.c.point_count; ++i) {
        Vec2 ra = sc.c.points[i].point - a.center();
        Vec2 rb = sc.c.points[i].point - b.center();
        Vec2 vrel = velocity_at(b, rb) - velocity_at(a, ra);
        double vn = dot(vrel, n);
        if (vn < 0.0) {
          double ran = cross(ra, n);
          double rbn = cross(rb, n);
          double k = a.inv_mass + b.inv_mass + a.inv_inertia * ran * ran +
                     b.inv_inertia * rbn * rbn;
          if (k <= 0.0) continue;
          double e = -vn > cfg.restitution_threshold ? sc.restitution : 0.0;
          double jn = -(1.0 + e) * vn / k;
          apply_impulse(a, -n * jn, ra);
          apply_impulse(b, n * jn, rb);
          sc.accum_normal[i] += jn;

          // Coulomb friction against the impulse just applied.
          vrel = velocity_at(b, rb) - velocity_at(a, ra);
          double vt = dot(vrel, t);
          double rat = cross(ra, t);
          double rbt = cross(rb, t);
          double kt = a.inv_mass + b.inv_mass + a.inv_inertia * rat * rat +
                      b.inv_inertia * rbt * rbt;
          if (kt > 0.0) {
            double jt = -vt / kt;
            double max_t = sc.friction * jn;
            jt = std::clamp(jt, -max_t, max_t);
            apply_impulse(a, -t * jt, ra);
            apply_impulse(b, t * jt, rb);
          }

          // Rolling resistance for discs: a torque impulse capped by the
          // normal impulse, so free circles eventually stop rolling and the
          // scene can settle. Pure dissipation; linear momentum untouched.
          for (Body* body : {&a, &b}) {
            const auto* circ = std::get_if<geom::CircleShape>(&body->shape);
            if (!circ || body->inv_inertia <= 0.0) continue;
            double cap = cfg.rolling_friction * jn * circ->radius;
            double want = -body->angular_velocity / body->inv_inertia;
            body->angular_velocity +=
                std::clamp(want, -cap, cap) * body->inv_inertia;
          }
        }
      }
    }
  }
}

void solve_position(world::Scene& scene, const std::vector<SolvedContact>& contacts,
                    const StepConfig& cfg) {
  // Project 80% of the remaining penetration per pass, iterated so that a
  // fresh impact is pushed out in the same step that dissipated its kinetic
  // energy (keeps per-step total energy non-increasing).
  for (int pass = 0; pass < cfg.solver_passes; ++pass) {
    for (const auto& sc : contacts) {
      Body& a = *scene.find_body(sc.c.a);
      Body& b = *scene.find_body(sc.c.b);
      double inv_sum = a.inv_mass + b.inv_mass;
      if (inv_sum <= 0.0) continue;
      Contact fresh;
      if (!collide(a, b, fresh)) continue;
      double pen = 0.0;
      for (int i = 0; i < fresh.point_count; ++i) {
        pen = std::max(pen, fresh.points[i].penetration);
      }
      double correction = cfg.position_correction * std::max(pen - cfg.slop, 0.0);
      if (correction <= 0.0) continue;
      Vec2 shift = fresh.normal * (correction / inv_sum);
      a.set_center(a.center() - shift * a.inv_mass);
      b.set_center(b.center() + shift * b.inv_mass);
    }
  }
}

void apply_damage_and_destroy(world::Scene& scene,
                              const std::vector<SolvedContact>& contacts,
                              StepEvents& ev) {
  for (const auto& sc : contacts) {
    double total = sc.accum_normal[0] + sc.accum_normal[1];
    if (total <= 0.0) continue;
    ev.collisions.push_back({sc.c.a, sc.c.b, total});
    for (int id : {sc.c.a, sc.c.b}) {
      Body& body = *scene.find_body(id);
      if (!body.alive || body.kind == BodyKind::Ground) continue;
      double dmg = std::max(0.0, total - body.material.damage_threshold);
      if (dmg > 0.0) {
        body.damage = std::min(body.damage + dmg, body.material.health);
      }
    }
  }
  for (Body& body : scene.bodies) {
    if (body.alive && body.kind != BodyKind::Ground &&
        body.damage >= body.material.health) {
      body.alive = false;
      ev.destroyed.push_back({body.id, body.material.break_score});
    }
  }
}

void update_sleep_counter(world::Scene& scene, const StepConfig& cfg) {
  bool quiet = true;
  for (const Body& body : scene.bodies) {
    if (!body.alive || !body.active) continue;
    if (body.velocity.length() >= cfg.v_sleep ||
        std::abs(body.angular_velocity) >= cfg.w_sleep) {
      quiet = false;
      break;
    }
  }
  scene.quiet_steps = quiet ? scene.quiet_steps + 1 : 0;
}

}  // namespace

StepEvents step(world::Scene& scene, double dt, const StepConfig& cfg) {
  int grounds = 0;
  for (const Body& b : scene.bodies) {
    if (b.kind == BodyKind::Ground) ++grounds;
  }
  if (grounds != 1) {
    throw std::logic_error("scene contract violation: expected exactly one ground");
  }

  StepEvents ev;
  integrate(scene, dt);
  scene.time += dt;

  // Contacts only matter when at least one side moves; frozen pairs are the
  // stability assumption at work.
  std::vector<SolvedContact> contacts;
  const std::size_t n = scene.bodies.size();
  for (std::size_t i = 0; i < n; ++i) {
    Body& a = scene.bodies[i];
    if (!a.alive) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      Body& b = scene.bodies[j];
      if (!b.alive) continue;
      if (!a.active && !b.active) continue;
      if (a.kind == BodyKind::Ground && b.kind == BodyKind::Ground) continue;
      Contact c;
      if (collide(a, b, c)) {
        SolvedContact sc;
        sc.c = c;
        sc.restitution = std::min(a.material.restitution, b.material.restitution);
        sc.friction = std::sqrt(a.material.friction * b.material.friction);
        contacts.push_back(sc);
      }
    }
  }
  std::sort(contacts.begin(), contacts.end(),
            [](const SolvedContact& x, const SolvedContact& y) {
              int xa = std::min(x.c.a, x.c.b), xb = std::max(x.c.a, x.c.b);
              int ya = std::min(y.c.a, y.c.b), yb = std::max(y.c.a, y.c.b);
              return xa != ya ? xa < ya : xb < yb;
            });

  // Activation transmits through contact with an already active object.
  for (const auto& sc : contacts) {
    Body& a = *scene.find_body(sc.c.a);
    Body& b = *scene.find_body(sc.c.b);
    Body* inactive = nullptr;
    if (a.active && !b.active && b.kind != BodyKind::Ground) inactive = &b;
    if (b.active && !a.active && a.kind != BodyKind::Ground) inactive = &a;
    if (inactive) {
      inactive->active = true;
      ev.activated.push_back(inactive->id);
    }
  }

  solve_velocity(scene, contacts, cfg);
  solve_position(scene, contacts, cfg);
  apply_damage_and_destroy(scene, contacts, ev);
  update_sleep_counter(scene, cfg);
  return ev;
}

bool is_settled(const world::Scene& scene, const StepConfig& cfg) {
  bool any_active = false;
  for (const Body& b : scene.bodies) {
    if (b.alive && b.active) {
      any_active = true;
      break;
    }
  }
  if (!any_active) return true;
  return scene.quiet_steps >= cfg.sleep_frames;
}

StepEvents apply_radial_impulse(world::Scene& scene, Point2 center, double radius,
                                double strength, const StepConfig& cfg) {
  StepEvents ev;
  for (Body& body : scene.bodies) {
    if (!body.alive || body.kind == BodyKind::Ground) continue;
    Vec2 d = body.center() - center;
    double dist = d.length();
    if (dist >= radius) continue;
    Vec2 dir = dist > 0.0 ? d / dist : Vec2{0.0, 1.0};
    double impulse = strength * (1.0 - dist / radius);
    body.velocity += dir * (impulse * body.inv_mass);
    if (!body.active) {
      body.active = true;
      ev.activated.push_back(body.id);
    }
    double dmg = impulse * cfg.explosion_damage_factor;
    body.damage = std::min(body.damage + dmg, body.material.health);
  }
  for (Body& body : scene.bodies) {
    if (body.alive && body.kind != BodyKind::Ground &&
        body.damage >= body.material.health) {
      body.alive = false;
      ev.destroyed.push_back({body.id, body.material.break_score});
    }
  }
  scene.quiet_steps = 0;
  return ev;
}

namespace {
inline void fnv(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
}
inline std::uint64_t bits(double d) {
  std::uint64_t u;
  std::memcpy(&u, &d, sizeof u);
  return u;
}
}  // namespace

std::uint64_t state_hash(const world::Scene& scene) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv(h, bits(scene.time));
  fnv(h, static_cast<std::uint64_t>(scene.bird_queue.size()));
  fnv(h, static_cast<std::uint64_t>(scene.flying_bird));
  for (const Body& b : scene.bodies) {
    fnv(h, static_cast<std::uint64_t>(b.id));
    Point2 c = b.center();
    fnv(h, bits(c.x));
    fnv(h, bits(c.y));
    if (const auto* r = std::get_if<geom::OrientedRect>(&b.shape)) {
      fnv(h, bits(r->angle));
    }
    fnv(h, bits(b.velocity.x));
    fnv(h, bits(b.velocity.y));
    fnv(h, bits(b.angular_velocity));
    fnv(h, bits(b.damage));
    fnv(h, (b.active ? 2u : 0u) | (b.alive ? 1u : 0u));
  }
  return h;
}

}  // namespace sling::phys
