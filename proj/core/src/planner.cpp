#include "sling/planner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace sling::plan {

double flight_time(double angle, const LaunchContext& ctx) {
  double vy = ctx.speed * std::sin(angle);
  double g = ctx.gravity;
  double h = std::max(ctx.height_above_ground, 0.0);
  return (vy + std::sqrt(vy * vy + 2.0 * g * h)) / g;
}

std::vector<world::Shot> build_shots(const PlannerConfig& cfg, BirdType bird,
                                     const LaunchContext& ctx) {
  std::vector<world::Shot> shots;
  const bool taps = world::has_ability(bird) && cfg.tap_count > 0;
  shots.reserve(static_cast<std::size_t>(cfg.angle_count) *
                (taps ? cfg.tap_count : 1));
  for (int i = 0; i < cfg.angle_count; ++i) {
    double angle = cfg.angle_min + i * cfg.angle_step;
    if (!taps) {
      shots.push_back({angle, std::nullopt});
      continue;
    }
    double t_flight = flight_time(angle, ctx);
    double lo = 0.15 * t_flight;
    double span = 0.75 * t_flight;
    for (int j = 0; j < cfg.tap_count; ++j) {
      double t = lo + span * (j + 1) / (cfg.tap_count + 1);
      shots.push_back({angle, t});
    }
  }
  return shots;
}

SimOutcome run_simulation(const world::Scene& imagined, const world::Shot& shot,
                          const PlannerConfig& cfg) {
  world::Scene sim = imagined;  // simulation duplication, never mutation
  phys::StepConfig step_cfg;
  step_cfg.dt = cfg.dt;

  world::launch(sim, shot);
  int tap_step = -1;
  if (shot.tap_time) {
    tap_step = static_cast<int>(std::lround(*shot.tap_time / cfg.dt));
    tap_step = std::max(tap_step, 1);
  }

  SimOutcome out;
  out.shot = shot;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const int max_steps = static_cast<int>(std::ceil(cfg.horizon / cfg.dt));
  for (int i = 1; i <= max_steps; ++i) {
    StepEvents ev = phys::step(sim, cfg.dt, step_cfg);
    out.collisions += static_cast<int>(ev.collisions.size());
    out.destroyed += static_cast<int>(ev.destroyed.size());
    if (i == tap_step) {
      Body* bird = sim.find_body(sim.flying_bird);
      if (bird && bird->alive && !sim.tap_used) {
        StepEvents tev = world::tap(sim);
        out.destroyed += static_cast<int>(tev.destroyed.size());
      }
    }
    h = (h ^ phys::state_hash(sim)) * 0x100000001b3ULL;
    if (phys::is_settled(sim, step_cfg) && i > tap_step) break;
  }

  out.score = world::current_score(sim);
  for (const Body& b : sim.bodies) {
    if (b.kind == BodyKind::Pig && !b.alive) ++out.pigs_killed;
  }
  out.settled = phys::is_settled(sim, step_cfg);
  out.trace_hash = h;
  return out;
}

std::vector<double> robust_scores(const std::vector<double>& raw, int k) {
  const int n = static_cast<int>(raw.size());
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    int lo = std::max(0, i - k);
    int hi = std::min(n - 1, i + k);
    double sum = 0.0;
    for (int j = lo; j <= hi; ++j) sum += raw[j];
    out[i] = sum / (hi - lo + 1);
  }
  return out;
}

Decision select(std::vector<SimOutcome> per_angle, const PlannerConfig& cfg) {
  Decision d;
  std::vector<double> raw(per_angle.size());
  for (std::size_t i = 0; i < per_angle.size(); ++i) raw[i] = per_angle[i].score;
  d.robust = robust_scores(raw, cfg.window);

  int best = 0;
  for (int i = 1; i < static_cast<int>(per_angle.size()); ++i) {
    if (d.robust[i] > d.robust[best] ||
        (d.robust[i] == d.robust[best] &&
         per_angle[i].score > per_angle[best].score)) {
      best = i;
    }
  }
  d.chosen_index = best;
  d.chosen = per_angle[best].shot;
  d.raw_score = per_angle[best].score;
  d.robust_score = d.robust[best];
  d.all_outcomes = std::move(per_angle);
  return d;
}

Decision plan(const world::Scene& imagined, const PlannerConfig& cfg) {
  if (imagined.bird_queue.empty()) throw world::NoBirdsLeft();
  BirdType bird = imagined.bird_queue.front();
  LaunchContext ctx;
  ctx.speed = imagined.launch_speed;
  ctx.gravity = imagined.gravity.length();
  ctx.height_above_ground = imagined.slingshot.y - imagined.ground_y();

  std::vector<world::Shot> shots = build_shots(cfg, bird, ctx);
  std::vector<SimOutcome> outcomes(shots.size());

  const int workers = std::max(cfg.workers, 1);
  if (workers == 1) {
    for (std::size_t i = 0; i < shots.size(); ++i) {
      outcomes[i] = run_simulation(imagined, shots[i], cfg);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < shots.size();
             i = next.fetch_add(1)) {
          outcomes[i] = run_simulation(imagined, shots[i], cfg);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Reduce tap variants: best tap per angle by raw score, earliest tap wins
  // ties. Index order is fixed, so the reduction is worker-count invariant.
  const std::size_t per = shots.size() / cfg.angle_count;
  std::vector<SimOutcome> per_angle(cfg.angle_count);
  for (int a = 0; a < cfg.angle_count; ++a) {
    std::size_t base = a * per;
    std::size_t best = base;
    if (cfg.window_over_taps && per > 1) {
      auto tap_window_mean = [&](std::size_t j) {
        std::size_t lo = j >= static_cast<std::size_t>(cfg.window) ? j - cfg.window : 0;
        std::size_t hi = std::min(per - 1, j + cfg.window);
        double sum = 0.0;
        for (std::size_t t = lo; t <= hi; ++t) sum += outcomes[base + t].score;
        return sum / (hi - lo + 1);
      };
      double best_mean = tap_window_mean(0);
      for (std::size_t j = 1; j < per; ++j) {
        double m = tap_window_mean(j);
        if (m > best_mean) {
          best_mean = m;
          best = base + j;
        }
      }
    } else {
      for (std::size_t j = base + 1; j < base + per; ++j) {
        if (outcomes[j].score > outcomes[best].score) best = j;
      }
    }
    per_angle[a] = outcomes[best];
  }
  return select(std::move(per_angle), cfg);
}

void write_sweep_csv(const Decision& d, std::ostream& out) {
  out << "angle,raw_score,robust_score,pigs_killed,trace_hash\n";
  char buf[128];
  for (std::size_t i = 0; i < d.all_outcomes.size(); ++i) {
    const SimOutcome& o = d.all_outcomes[i];
    std::snprintf(buf, sizeof buf, "%.6f,%d,%.6f,%d,%llu\n", o.shot.angle,
                  o.score, d.robust[i], o.pigs_killed,
                  static_cast<unsigned long long>(o.trace_hash));
    out << buf;
  }
}

}  // namespace sling::plan
