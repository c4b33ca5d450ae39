#pragma once

#include <vector>

namespace sling {

struct CollisionEvent {
  int a = -1;
  int b = -1;
  double impulse = 0.0;  // total normal impulse magnitude
};

struct DestroyedEvent {
  int id = -1;
  int break_score = 0;
};

struct StepEvents {
  std::vector<CollisionEvent> collisions;
  std::vector<DestroyedEvent> destroyed;
  std::vector<int> activated;

  void merge(const StepEvents& o) {
    collisions.insert(collisions.end(), o.collisions.begin(), o.collisions.end());
    destroyed.insert(destroyed.end(), o.destroyed.begin(), o.destroyed.end());
    activated.insert(activated.end(), o.activated.begin(), o.activated.end());
  }
};

}  // namespace sling
