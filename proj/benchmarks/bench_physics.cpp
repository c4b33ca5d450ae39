#include <benchmark/benchmark.h>

#include "sling/physics.hpp"
#include "sling/world.hpp"

using namespace sling;

namespace {

// A stack of wood blocks being knocked over by a bird.
world::Scene collapse_scene() {
  world::Scene s;
  Body ground;
  ground.id = s.next_id++;
  ground.kind = BodyKind::Ground;
  ground.material = world::material_by_name("ground");
  ground.shape = geom::OrientedRect{{0.0, -1000.0}, 100000.0, 1000.0, 0.0};
  ground.compute_mass();
  s.bodies.push_back(ground);

  for (int i = 0; i < 12; ++i) {
    Body b;
    b.id = s.next_id++;
    b.kind = BodyKind::Block;
    b.material = world::material_by_name("wood");
    b.shape = geom::OrientedRect{{300.0 + 30.0 * (i % 3), 10.0 + 20.0 * (i / 3)},
                                 14.0, 10.0, 0.0};
    b.compute_mass();
    s.bodies.push_back(b);
  }

  Body bird;
  bird.id = s.next_id++;
  bird.kind = BodyKind::Projectile;
  bird.material = world::bird_material();
  bird.shape = geom::CircleShape{{100.0, 60.0}, 10.0};
  bird.velocity = {200.0, 30.0};
  bird.active = true;
  bird.compute_mass();
  s.bodies.push_back(bird);
  return s;
}

void BM_PhysicsStep(benchmark::State& state) {
  auto base = collapse_scene();
  for (auto _ : state) {
    world::Scene s = base;
    for (int i = 0; i < 120; ++i) phys::step(s, 1.0 / 60.0);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_PhysicsStep)->Unit(benchmark::kMicrosecond);

}  // namespace
