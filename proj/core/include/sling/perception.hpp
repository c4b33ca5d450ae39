#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sling/geometry.hpp"
#include "sling/pixel_grid.hpp"
#include "sling/world.hpp"

namespace sling::percept {

struct PerceptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PerceptionOptions {
  int min_pixels = 6;  // smaller components are noise
  double equalize_rel_tol = 0.1;
  geom::ClassifyOptions classify;
};

struct ReconstructedObject {
  Shape shape;
  BodyKind kind = BodyKind::Block;  // Block or Pig
  std::string material;
  geom::Hull hull;  // retained for diagnostics
};

struct ReconstructedScene {
  std::vector<ReconstructedObject> objects;
  Point2 slingshot;
  std::vector<BirdType> bird_queue;
  double ground_y = 0.0;
  int viewport_width = 0;
  int viewport_height = 0;
  std::vector<std::string> notes;
};

// The full detection pipeline: connected components per class, convex hull,
// minimum rectangle, shape classification, dimension equalization.
ReconstructedScene perceive(const PixelGrid& grid,
                            const PerceptionOptions& opts = {});

// Everything the imagined world needs that cannot be read off the image.
struct SceneTemplate {
  Vec2 gravity{0.0, -100.0};
  double launch_speed = 170.0;
  world::ScoreConfig scoring;
  world::BirdAbilities abilities;
};

// Builds the imagined, simulatable scene. Every body starts inactive.
world::Scene to_scene(const ReconstructedScene& rec, const SceneTemplate& tmpl);

// Human-readable reconstruction report.
std::string describe(const ReconstructedScene& rec);

}  // namespace sling::percept
