#include "sling/agent.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "sling/render.hpp"

namespace sling::agent {

namespace {

std::string level_id_from_path(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

}  // namespace

void execute_shot(world::Scene& scene, const world::Shot& shot,
                  const plan::PlannerConfig& planner,
                  const phys::StepConfig& physics) {
  world::launch(scene, shot);
  int tap_step = -1;
  if (shot.tap_time) {
    tap_step = std::max(1, static_cast<int>(std::lround(*shot.tap_time / physics.dt)));
  }
  const int max_steps = static_cast<int>(std::ceil(planner.horizon / physics.dt));
  for (int i = 1; i <= max_steps; ++i) {
    phys::step(scene, physics.dt, physics);
    if (i == tap_step) {
      Body* bird = scene.find_body(scene.flying_bird);
      if (bird && bird->alive && !scene.tap_used) world::tap(scene);
    }
    if (phys::is_settled(scene, physics) && i > tap_step) break;
  }
  world::clear_projectiles(scene);
}

EpisodeResult sim_agent_play(const std::string& level_path,
                             const AgentOptions& opts, std::uint64_t /*seed*/) {
  EpisodeResult result;
  result.level_id = level_id_from_path(level_path);
  result.agent = "sim";

  world::Scene truth = world::load_level_file(level_path);
  int shot_index = 0;
  try {
    while (world::episode_state(truth) == world::EpisodeState::Running) {
      PixelGrid grid =
          render::rasterize(truth, opts.viewport_width, opts.viewport_height);
      percept::ReconstructedScene rec = percept::perceive(grid, opts.perception);
      world::Scene imagined = percept::to_scene(rec, opts.knowledge);
      if (imagined.bird_queue.empty()) break;  // nothing left to shoot

      plan::Decision decision = plan::plan(imagined, opts.planner);
      if (!opts.dump_dir.empty()) {
        std::ostringstream name;
        name << opts.dump_dir << "/" << result.level_id << "_shot"
             << shot_index << ".csv";
        std::ofstream out(name.str(), std::ios::binary);
        plan::write_sweep_csv(decision, out);
      }

      ShotLog log;
      log.shot = decision.chosen;
      log.pre_score = world::current_score(truth);
      execute_shot(truth, decision.chosen, opts.planner, opts.physics);
      log.post_score = world::current_score(truth);
      result.shots.push_back(log);
      ++result.birds_used;
      ++shot_index;
    }
  } catch (const percept::PerceptionError&) {
    result.failed = true;
  }

  result.final_score = world::current_score(truth);
  result.pigs_remaining = truth.alive_pigs();
  result.failed = result.pigs_remaining > 0;
  return result;
}

EpisodeResult naive_agent_play(const std::string& level_path,
                               const AgentOptions& opts, std::uint64_t seed) {
  EpisodeResult result;
  result.level_id = level_id_from_path(level_path);
  result.agent = "naive";

  world::Scene truth = world::load_level_file(level_path);
  Splitmix64 rng{seed};
  while (world::episode_state(truth) == world::EpisodeState::Running) {
    std::vector<const Body*> pigs;
    for (const Body& b : truth.bodies) {
      if (b.alive && b.kind == BodyKind::Pig) pigs.push_back(&b);
    }
    const Body* target = pigs[rng.next() % pigs.size()];

    double angle = std::numbers::pi / 4.0;
    try {
      Vec2 d = target->center() - truth.slingshot;
      auto [low, high] =
          world::solve_launch_angles(d.x, d.y, truth.launch_speed,
                                     truth.gravity.length());
      angle = low;  // naive means naive: always the direct arc
    } catch (const world::Unreachable&) {
    } catch (const world::OutOfSector&) {
    }

    ShotLog log;
    log.shot = {angle, std::nullopt};
    log.pre_score = world::current_score(truth);
    execute_shot(truth, log.shot, opts.planner, opts.physics);
    log.post_score = world::current_score(truth);
    result.shots.push_back(log);
    ++result.birds_used;
  }

  result.final_score = world::current_score(truth);
  result.pigs_remaining = truth.alive_pigs();
  result.failed = result.pigs_remaining > 0;
  return result;
}

BenchReport bench(const std::vector<std::string>& level_paths, int trials,
                  std::uint64_t base_seed, const AgentOptions& opts) {
  BenchReport report;
  report.trials = trials;
  std::vector<std::string> paths = level_paths;
  std::sort(paths.begin(), paths.end());

  for (const std::string& path : paths) {
    report.levels.push_back(level_id_from_path(path));
    for (int t = 0; t < trials; ++t) {
      EpisodeResult naive = naive_agent_play(path, opts, base_seed + t);
      report.rows.push_back({naive.level_id, t, "naive", naive.final_score,
                             naive.birds_used, naive.pigs_remaining, naive.failed});
      report.naive_total += naive.final_score;
      report.naive_failures += naive.failed ? 1 : 0;

      EpisodeResult sim = sim_agent_play(path, opts);
      report.rows.push_back({sim.level_id, t, "sim", sim.final_score,
                             sim.birds_used, sim.pigs_remaining, sim.failed});
      report.sim_total += sim.final_score;
      report.sim_failures += sim.failed ? 1 : 0;
    }
  }
  return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
  out << "level,trial,agent,score,birds_used,pigs_remaining,failed\n";
  for (const BenchRow& r : report.rows) {
    out << r.level << "," << r.trial << "," << r.agent << "," << r.score << ","
        << r.birds_used << "," << r.pigs_remaining << ","
        << (r.failed ? 1 : 0) << "\n";
  }
}

namespace {

void format_agent_table(const BenchReport& report, const std::string& agent,
                        std::ostringstream& out) {
  out << "scores, " << agent << " agent\n";
  out << "level";
  for (int t = 0; t < report.trials; ++t) out << "\ttrial" << (t + 1);
  out << "\tavg\n";
  std::vector<long> trial_totals(report.trials, 0);
  for (const std::string& level : report.levels) {
    out << level;
    long sum = 0;
    for (int t = 0; t < report.trials; ++t) {
      for (const BenchRow& r : report.rows) {
        if (r.level == level && r.trial == t && r.agent == agent) {
          out << "\t" << r.score;
          sum += r.score;
          trial_totals[t] += r.score;
        }
      }
    }
    out << "\t" << (report.trials > 0 ? double(sum) / report.trials : 0.0) << "\n";
  }
  out << "total";
  long grand = 0;
  for (int t = 0; t < report.trials; ++t) {
    out << "\t" << trial_totals[t];
    grand += trial_totals[t];
  }
  out << "\t" << (report.trials > 0 ? double(grand) / report.trials : 0.0) << "\n\n";
}

}  // namespace

std::string format_bench_table(const BenchReport& report) {
  std::ostringstream out;
  format_agent_table(report, "naive", out);
  format_agent_table(report, "sim", out);
  out << "naive total " << report.naive_total << ", failures "
      << report.naive_failures << "\n";
  out << "sim total " << report.sim_total << ", failures "
      << report.sim_failures << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "improvement %.1f%%\n",
                report.improvement_percent());
  out << buf;
  return out.str();
}

}  // namespace sling::agent
