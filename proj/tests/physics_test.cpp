#include <doctest.h>

#include <cmath>

#include "sling/physics.hpp"
#include "sling/world.hpp"
#include "test_util.hpp"

using namespace sling;

namespace {

world::Scene empty_scene(double ground_y = 0.0) {
  world::Scene s;
  s.bodies.reserve(32);  // keep Body& helpers valid across additions
  s.gravity = {0.0, -100.0};
  Body g;
  g.id = s.next_id++;
  g.kind = BodyKind::Ground;
  g.material = world::material_by_name("ground");
  g.shape = geom::OrientedRect{{0.0, ground_y - 1000.0}, 100000.0, 1000.0, 0.0};
  g.compute_mass();
  s.bodies.push_back(g);
  return s;
}

Body& add_box(world::Scene& s, const std::string& mat, Point2 c, double hw,
              double hh, double angle = 0.0) {
  Body b;
  b.id = s.next_id++;
  b.kind = BodyKind::Block;
  b.material = world::material_by_name(mat);
  b.shape = geom::OrientedRect{c, hw, hh, angle};
  b.compute_mass();
  s.bodies.push_back(b);
  return s.bodies.back();
}

Body& add_circle(world::Scene& s, const std::string& mat, Point2 c, double r) {
  Body b;
  b.id = s.next_id++;
  b.kind = BodyKind::Block;
  b.material = world::material_by_name(mat);
  b.shape = geom::CircleShape{c, r};
  b.compute_mass();
  s.bodies.push_back(b);
  return s.bodies.back();
}

double total_energy(const world::Scene& s) {
  double e = 0.0;
  double g = s.gravity.length();
  for (const Body& b : s.bodies) {
    if (!b.alive || b.inv_mass == 0.0) continue;
    double m = 1.0 / b.inv_mass;
    e += 0.5 * m * b.velocity.length_sq();
    if (b.inv_inertia > 0.0) {
      e += 0.5 * (1.0 / b.inv_inertia) * b.angular_velocity * b.angular_velocity;
    }
    e += m * g * b.center().y;
  }
  return e;
}

}  // namespace

TEST_CASE("inactive bodies are held in place") {
  auto s = empty_scene();
  Body& block = add_box(s, "wood", {200.0, 150.0}, 20.0, 10.0);  // mid-air
  int id = block.id;
  for (int i = 0; i < 900; ++i) phys::step(s, 1.0 / 60.0);
  const Body* b = s.find_body(id);
  CHECK(b->center().x == 200.0);
  CHECK(b->center().y == 150.0);
  CHECK(b->velocity.x == 0.0);
  CHECK(b->velocity.y == 0.0);
  CHECK(!b->active);
}

TEST_CASE("semi-implicit free fall matches the closed form") {
  auto s = empty_scene(-10000.0);  // ground far away
  Body& b = add_circle(s, "wood", {0.0, 0.0}, 5.0);
  b.active = true;
  int id = b.id;
  for (int i = 0; i < 100; ++i) phys::step(s, 0.01);
  // y_n = -g dt^2 n(n+1)/2
  CHECK(std::abs(s.find_body(id)->center().y - (-50.5)) < 1e-9);
}

TEST_CASE("equal-mass elastic head-on collision exchanges velocities") {
  auto s = empty_scene(-10000.0);
  s.gravity = {0.0, 0.0};
  Body& a = add_circle(s, "wood", {0.0, 0.0}, 5.0);
  Body& b = add_circle(s, "wood", {10.001, 0.0}, 5.0);
  for (Body* p : {&a, &b}) {
    p->active = true;
    p->material.restitution = 1.0;
    p->material.friction = 0.0;
  }
  a.velocity = {20.0, 0.0};
  b.velocity = {-20.0, 0.0};
  int ia = a.id, ib = b.id;
  for (int i = 0; i < 5; ++i) phys::step(s, 1.0 / 60.0);
  CHECK(std::abs(s.find_body(ia)->velocity.x - (-20.0)) < 1e-9);
  CHECK(std::abs(s.find_body(ib)->velocity.x - 20.0) < 1e-9);
  CHECK(std::abs(s.find_body(ia)->velocity.y) < 1e-9);
}

TEST_CASE("momentum is conserved in frictionless free-body contacts") {
  auto s = empty_scene(-10000.0);
  s.gravity = {0.0, 0.0};
  Body& a = add_circle(s, "wood", {0.0, 0.0}, 6.0);
  Body& b = add_circle(s, "stone", {11.0, 2.0}, 6.0);
  for (Body* p : {&a, &b}) {
    p->active = true;
    p->material.friction = 0.0;
  }
  a.velocity = {30.0, 1.0};
  b.velocity = {-10.0, 0.5};
  double ma = 1.0 / a.inv_mass, mb = 1.0 / b.inv_mass;
  Vec2 p0 = a.velocity * ma + b.velocity * mb;
  int ia = a.id, ib = b.id;
  for (int i = 0; i < 20; ++i) phys::step(s, 1.0 / 60.0);
  Vec2 p1 = s.find_body(ia)->velocity * ma + s.find_body(ib)->velocity * mb;
  CHECK(std::abs(p1.x - p0.x) < 1e-9 * std::abs(p0.x));
  CHECK(std::abs(p1.y - p0.y) < 1e-9 * p0.length());
}

TEST_CASE("determinism: identical scenes produce identical hashes") {
  auto make = [] {
    auto s = empty_scene();
    add_box(s, "wood", {300.0, 10.0}, 10.0, 10.0);
    add_box(s, "wood", {300.0, 30.0}, 10.0, 10.0);
    Body& bird = add_circle(s, "wood", {100.0, 50.0}, 8.0);
    bird.kind = BodyKind::Projectile;
    bird.material = world::bird_material();
    bird.compute_mass();
    bird.velocity = {150.0, 20.0};
    bird.active = true;
    return s;
  };
  auto s1 = make();
  auto s2 = make();
  for (int i = 0; i < 300; ++i) {
    phys::step(s1, 1.0 / 60.0);
    phys::step(s2, 1.0 / 60.0);
    REQUIRE(phys::state_hash(s1) == phys::state_hash(s2));
  }
}

TEST_CASE("activation transmits by contact and never reverts") {
  auto s = empty_scene();
  add_box(s, "wood", {300.0, 10.0}, 10.0, 10.0);
  add_box(s, "wood", {300.0, 30.0}, 10.0, 10.0);
  add_box(s, "wood", {500.0, 10.0}, 10.0, 10.0);  // far away, stays frozen
  Body& bird = add_circle(s, "wood", {200.0, 20.0}, 8.0);
  bird.kind = BodyKind::Projectile;
  bird.material = world::bird_material();
  bird.compute_mass();
  bird.velocity = {200.0, 10.0};
  bird.active = true;

  std::vector<bool> was_active(s.bodies.size(), false);
  bool any_activation = false;
  for (int i = 0; i < 600; ++i) {
    auto ev = phys::step(s, 1.0 / 60.0);
    any_activation |= !ev.activated.empty();
    for (std::size_t k = 0; k < s.bodies.size(); ++k) {
      if (was_active[k]) CHECK(s.bodies[k].active);  // no reverting
      was_active[k] = s.bodies[k].active;
    }
  }
  CHECK(any_activation);
  CHECK(s.find_body(1)->active);   // struck stack
  CHECK(!s.find_body(3)->active);  // remote block untouched
  CHECK(s.find_body(3)->center().x == 500.0);
}

TEST_CASE("no tunneling through a 6 px wall at launch speeds") {
  auto s = empty_scene();
  add_box(s, "stone", {400.0, 50.0}, 3.0, 50.0);  // 6 px thick wall
  Body& bird = add_circle(s, "wood", {100.0, 60.0}, 8.0);
  bird.kind = BodyKind::Projectile;
  bird.material = world::bird_material();
  bird.compute_mass();
  bird.velocity = {300.0, 0.0};
  bird.active = true;
  bool hit_wall = false;
  for (int i = 0; i < 120 && !hit_wall; ++i) {
    auto ev = phys::step(s, 1.0 / 60.0);
    for (const auto& c : ev.collisions) {
      if ((c.a == 1 && c.b == 2) || (c.a == 2 && c.b == 1)) hit_wall = true;
    }
  }
  CHECK(hit_wall);
}

TEST_CASE("energy is non-increasing with restitution below one") {
  testutil::Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    auto s = empty_scene();
    for (int i = 0; i < 4; ++i) {
      Body& b = add_circle(s, "wood",
                           {rng.uniform(50.0, 400.0), rng.uniform(30.0, 150.0)},
                           rng.uniform(5.0, 10.0));
      b.active = true;
      b.material.restitution = rng.uniform(0.0, 0.5);
      b.velocity = {rng.uniform(-50.0, 50.0), rng.uniform(-20.0, 20.0)};
    }
    double e0 = total_energy(s);
    double prev = e0;
    for (int i = 0; i < 600; ++i) {
      phys::step(s, 1.0 / 60.0);
      double e = total_energy(s);
      CHECK(e <= prev + 1e-6 * std::abs(e0));
      prev = e;
    }
  }
}

TEST_CASE("is_settled") {
  auto s = empty_scene();
  CHECK(phys::is_settled(s));  // no active bodies

  Body& b = add_circle(s, "wood", {100.0, 200.0}, 6.0);
  b.active = true;
  phys::step(s, 1.0 / 60.0);
  CHECK(!phys::is_settled(s));  // free fall

  // run to quiescence on the ground
  for (int i = 0; i < 900; ++i) phys::step(s, 1.0 / 60.0);
  CHECK(phys::is_settled(s));
}

TEST_CASE("radial impulse: falloff, boundary, and center tie-break") {
  auto s = empty_scene(-10000.0);
  s.gravity = {0.0, 0.0};
  double r = 100.0;
  Body& at_center = add_circle(s, "wood", {0.0, 0.0}, 2.0);
  Body& near = add_circle(s, "wood", {r / 4.0, 0.0}, 2.0);
  Body& mid = add_circle(s, "wood", {0.0, r / 2.0}, 2.0);
  Body& far = add_circle(s, "wood", {-3.0 * r / 4.0, 0.0}, 2.0);
  Body& outside = add_circle(s, "wood", {r, 0.0}, 2.0);
  int ids[5] = {at_center.id, near.id, mid.id, far.id, outside.id};

  auto ev = phys::apply_radial_impulse(s, {0.0, 0.0}, r, 1000.0);
  CHECK(ev.activated.size() == 4);  // body at d == r untouched

  const Body* c = s.find_body(ids[0]);
  CHECK(c->velocity.x == 0.0);
  CHECK(c->velocity.y > 0.0);  // undefined direction resolves straight up

  double v1 = s.find_body(ids[1])->velocity.length();
  double v2 = s.find_body(ids[2])->velocity.length();
  double v3 = s.find_body(ids[3])->velocity.length();
  CHECK(v1 / v3 == doctest::Approx(3.0));
  CHECK(v2 / v3 == doctest::Approx(2.0));
  CHECK(s.find_body(ids[4])->velocity.length() == 0.0);
  CHECK(!s.find_body(ids[4])->active);
}

TEST_CASE("step rejects scenes without exactly one ground") {
  world::Scene s;
  CHECK_THROWS_AS(phys::step(s, 1.0 / 60.0), std::logic_error);
  auto s2 = empty_scene();
  Body g2 = s2.bodies[0];
  g2.id = s2.next_id++;
  s2.bodies.push_back(g2);
  CHECK_THROWS_AS(phys::step(s2, 1.0 / 60.0), std::logic_error);
}
