#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sling/physics.hpp"
#include "sling/world.hpp"

namespace sling::plan {

struct PlannerConfig {
  int angle_count = 106;
  double angle_step = 0.01;   // rad
  double angle_min = 0.05;    // rad, sweep origin
  int tap_count = 5;
  double horizon = 15.0;      // seconds of simulated time per rollout
  double dt = 1.0 / 60.0;
  int window = 1;             // robust-score half-width k
  bool window_over_taps = false;
  // The original agent raced a live game clock; an offline engine just steps
  // simulated time, so this knob is recorded but has no effect.
  double speed_factor = 3.0;
  int workers = 1;
};

struct SimOutcome {
  world::Shot shot;
  int score = 0;
  int pigs_killed = 0;
  int collisions = 0;
  int destroyed = 0;
  std::uint64_t trace_hash = 0;
  bool settled = false;
};

struct Decision {
  world::Shot chosen;
  int raw_score = 0;
  double robust_score = 0.0;
  int chosen_index = 0;
  std::vector<SimOutcome> all_outcomes;  // per angle, best tap per angle
  std::vector<double> robust;            // windowed means, per angle
};

// Tap times are placed inside the analytic flight window of each angle.
struct LaunchContext {
  double speed = 170.0;
  double gravity = 100.0;       // magnitude
  double height_above_ground = 0.0;
};

// The swept action grid: angle_count angles; birds with an ability get
// tap_count tap variants per angle, Red gets none.
std::vector<world::Shot> build_shots(const PlannerConfig& cfg, BirdType bird,
                                     const LaunchContext& ctx);

// Deep-copies the imagined scene, launches, steps to horizon or settlement,
// taps at the nearest step. The input scene is untouched.
SimOutcome run_simulation(const world::Scene& imagined, const world::Shot& shot,
                          const PlannerConfig& cfg);

// Truncated-window mean of the per-angle raw scores.
std::vector<double> robust_scores(const std::vector<double>& raw, int k);

// Argmax over robust scores; ties fall back to raw score, then lower index.
Decision select(std::vector<SimOutcome> per_angle, const PlannerConfig& cfg);

// Full fan-out: build, simulate (optionally on several workers, result order
// fixed), reduce per angle, select.
Decision plan(const world::Scene& imagined, const PlannerConfig& cfg);

// `angle,raw_score,robust_score,pigs_killed,trace_hash`, LF line endings.
void write_sweep_csv(const Decision& d, std::ostream& out);

// Analytic time of flight to ground for a launch at `angle`.
double flight_time(double angle, const LaunchContext& ctx);

}  // namespace sling::plan
