#include <benchmark/benchmark.h>

#include "sling/perception.hpp"
#include "sling/planner.hpp"
#include "sling/render.hpp"
#include "sling/world.hpp"

using namespace sling;

namespace {

const char* kLevel = SLING_LEVELS_DIR "/lvl01_open_field.lvl";

void BM_RasterizePerceive(benchmark::State& state) {
  auto truth = world::load_level_file(kLevel);
  for (auto _ : state) {
    auto grid = render::rasterize(truth);
    auto rec = percept::perceive(grid);
    benchmark::DoNotOptimize(rec);
  }
}
BENCHMARK(BM_RasterizePerceive)->Unit(benchmark::kMillisecond);

void BM_PlannerSweep(benchmark::State& state) {
  auto truth = world::load_level_file(kLevel);
  auto grid = render::rasterize(truth);
  auto rec = percept::perceive(grid);
  percept::SceneTemplate tmpl;
  tmpl.launch_speed = 250.0;
  auto imagined = percept::to_scene(rec, tmpl);
  plan::PlannerConfig cfg;
  cfg.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto d = plan::plan(imagined, cfg);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_PlannerSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
