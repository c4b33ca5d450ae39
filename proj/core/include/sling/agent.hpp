#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sling/perception.hpp"
#include "sling/physics.hpp"
#include "sling/planner.hpp"
#include "sling/world.hpp"

namespace sling::agent {

// Seeded generator behind the naive agent's random pig choice.
struct Splitmix64 {
  std::uint64_t state = 0;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

struct ShotLog {
  world::Shot shot;
  int pre_score = 0;
  int post_score = 0;
};

struct EpisodeResult {
  std::string level_id;
  std::string agent;
  int final_score = 0;
  int birds_used = 0;
  int pigs_remaining = 0;
  bool failed = false;  // pigs remain at episode end
  std::vector<ShotLog> shots;
};

struct AgentOptions {
  plan::PlannerConfig planner;
  phys::StepConfig physics;
  // The agent's own knowledge of the world; it never reads these off the
  // ground truth.
  percept::SceneTemplate knowledge;
  percept::PerceptionOptions perception;
  int viewport_width = 840;
  int viewport_height = 480;
  // Directory for per-shot planner dumps; empty disables dumping.
  std::string dump_dir;
};

// Perceive -> imagine -> plan -> act loop. Deterministic; the seed is unused.
EpisodeResult sim_agent_play(const std::string& level_path,
                             const AgentOptions& opts, std::uint64_t seed = 0);

// Contest baseline: random pig, direct low-arc ballistic shot, no taps.
EpisodeResult naive_agent_play(const std::string& level_path,
                               const AgentOptions& opts, std::uint64_t seed);

struct BenchRow {
  std::string level;
  int trial = 0;
  std::string agent;
  int score = 0;
  int birds_used = 0;
  int pigs_remaining = 0;
  bool failed = false;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<std::string> levels;
  int trials = 0;
  long naive_total = 0;
  long sim_total = 0;
  int naive_failures = 0;
  int sim_failures = 0;

  double improvement_percent() const {
    return naive_total > 0
               ? 100.0 * (sim_total - naive_total) / static_cast<double>(naive_total)
               : 0.0;
  }
};

// Runs both agents on every (level, trial). The naive agent's trial t uses
// seed base_seed + t; the sim agent is seed-free.
BenchReport bench(const std::vector<std::string>& level_paths, int trials,
                  std::uint64_t base_seed, const AgentOptions& opts);

void write_bench_csv(const BenchReport& report, std::ostream& out);
std::string format_bench_table(const BenchReport& report);

// Shared by the episode loops and the CLI `simulate` subcommand: executes one
// shot on the ground-truth scene, stepping it to settlement or the horizon.
void execute_shot(world::Scene& scene, const world::Shot& shot,
                  const plan::PlannerConfig& planner, const phys::StepConfig& physics);

}  // namespace sling::agent
