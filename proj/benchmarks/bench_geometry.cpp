#include <benchmark/benchmark.h>

#include <cmath>

#include "sling/geometry.hpp"

using namespace sling;

namespace {

std::vector<Point2> ring_points(int n) {
  std::vector<Point2> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    double a = 2.0 * 3.14159265358979 * i / n;
    double r = 40.0 + 5.0 * std::sin(7.0 * a);
    pts.push_back({100.0 + r * std::cos(a), 100.0 + r * std::sin(a)});
  }
  return pts;
}

void BM_ConvexHull(benchmark::State& state) {
  auto pts = ring_points(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto h = geom::convex_hull(pts);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_ConvexHull)->Arg(64)->Arg(1024);

void BM_MinAreaRect(benchmark::State& state) {
  auto hull = geom::convex_hull(ring_points(256));
  for (auto _ : state) {
    auto r = geom::min_area_rect(hull);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MinAreaRect);

void BM_FloodFill(benchmark::State& state) {
  PixelGrid g(840, 480);
  for (int row = 100; row < 300; ++row)
    for (int col = 100; col < 500; ++col) g.at(col, row) = 2;
  for (auto _ : state) {
    auto comps = geom::flood_fill_components(g, 2);
    benchmark::DoNotOptimize(comps);
  }
}
BENCHMARK(BM_FloodFill);

}  // namespace
