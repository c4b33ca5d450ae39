#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sling/agent.hpp"
#include "sling/perception.hpp"
#include "sling/physics.hpp"
#include "sling/planner.hpp"
#include "sling/render.hpp"
#include "sling/world.hpp"

namespace {

using sling::agent::AgentOptions;

// Set when a config file pins the agent's game knowledge, so level headers
// no longer override it.
bool config_sets_speed = false;
bool config_sets_gravity = false;

// Config files reuse the line-oriented key-value style of level files.
void load_config_file(const std::string& path, AgentOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto want = [&](auto& field) {
      if (!(ls >> field)) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": bad value for " + key);
      }
    };
    if (key == "angle_count") want(opts.planner.angle_count);
    else if (key == "angle_step") want(opts.planner.angle_step);
    else if (key == "angle_min") want(opts.planner.angle_min);
    else if (key == "tap_count") want(opts.planner.tap_count);
    else if (key == "horizon") want(opts.planner.horizon);
    else if (key == "dt") { want(opts.planner.dt); opts.physics.dt = opts.planner.dt; }
    else if (key == "window") want(opts.planner.window);
    else if (key == "window_over_taps") {
      int v; want(v); opts.planner.window_over_taps = v != 0;
    }
    else if (key == "speed_factor") want(opts.planner.speed_factor);
    else if (key == "workers") want(opts.planner.workers);
    else if (key == "v_sleep") want(opts.physics.v_sleep);
    else if (key == "w_sleep") want(opts.physics.w_sleep);
    else if (key == "sleep_frames") want(opts.physics.sleep_frames);
    else if (key == "solver_passes") want(opts.physics.solver_passes);
    else if (key == "position_correction") want(opts.physics.position_correction);
    else if (key == "slop") want(opts.physics.slop);
    else if (key == "restitution_threshold") want(opts.physics.restitution_threshold);
    else if (key == "explosion_damage_factor") want(opts.physics.explosion_damage_factor);
    else if (key == "gravity") {
      want(opts.knowledge.gravity.x);
      want(opts.knowledge.gravity.y);
      config_sets_gravity = true;
    }
    else if (key == "speed") { want(opts.knowledge.launch_speed); config_sets_speed = true; }
    else if (key == "viewport") { want(opts.viewport_width); want(opts.viewport_height); }
    else if (key == "min_pixels") want(opts.perception.min_pixels);
    else if (key == "equalize_rel_tol") want(opts.perception.equalize_rel_tol);
    else {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown config key " + key);
    }
  }
}

// Gravity and launch speed are game constants the harness hands the agent,
// like telling it which game it is playing; they are not perceived state.
void adopt_level_knowledge(const std::string& level, AgentOptions& opts) {
  auto header = sling::world::load_level_file(level);
  if (!config_sets_speed) opts.knowledge.launch_speed = header.launch_speed;
  if (!config_sets_gravity) opts.knowledge.gravity = header.gravity;
}

std::vector<std::string> level_files_in(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".lvl") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

sling::plan::Decision plan_from_level(const std::string& level,
                                      const AgentOptions& opts) {
  auto truth = sling::world::load_level_file(level);
  auto grid = sling::render::rasterize(truth, opts.viewport_width,
                                       opts.viewport_height);
  auto rec = sling::percept::perceive(grid, opts.perception);
  auto imagined = sling::percept::to_scene(rec, opts.knowledge);
  return sling::plan::plan(imagined, opts.planner);
}

int run(int argc, char** argv) {
  CLI::App app{"slingshot game agent: forward-simulation planning over a 2D physics clone"};
  app.require_subcommand(1);

  AgentOptions opts;
  std::string config_path;
  app.add_option("--config", config_path, "key-value config file")
      ->each([&](const std::string& p) { load_config_file(p, opts); });

  // play
  auto* play = app.add_subcommand("play", "play a level with an agent");
  std::string play_level, play_agent = "sim", dump_dir;
  std::uint64_t seed = 1;
  play->add_option("level", play_level)->required();
  play->add_option("--agent", play_agent)->check(CLI::IsMember({"sim", "naive"}));
  play->add_option("--seed", seed);
  play->add_option("--dump-dir", dump_dir);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark protocol");
  std::string levels_dir, bench_csv;
  int trials = 4;
  bench_cmd->add_option("--levels", levels_dir)->required();
  bench_cmd->add_option("--trials", trials);
  bench_cmd->add_option("--csv", bench_csv);
  bench_cmd->add_option("--seed", seed);

  // perceive
  auto* perceive_cmd = app.add_subcommand("perceive", "reconstruct a scene from a classmap");
  std::string classmap_path, overlay_path, report_path;
  perceive_cmd->add_option("classmap", classmap_path)->required();
  perceive_cmd->add_option("--overlay", overlay_path);
  perceive_cmd->add_option("--report", report_path);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "forward-simulate shots on a level");
  std::string sim_level, trace_path, sweep_csv;
  double sim_angle = 0.0, sim_tap = -1.0;
  bool sweep = false;
  sim_cmd->add_option("level", sim_level)->required();
  auto* angle_opt = sim_cmd->add_option("--angle", sim_angle, "launch angle, rad");
  sim_cmd->add_option("--tap", sim_tap, "tap time, s");
  sim_cmd->add_option("--trace", trace_path, "per-step trace CSV");
  sim_cmd->add_flag("--sweep", sweep, "run the full planner angle sweep");
  sim_cmd->add_option("--csv", sweep_csv, "sweep output CSV");
  sim_cmd->add_option("--workers", opts.planner.workers);

  // render
  auto* render_cmd = app.add_subcommand("render", "rasterize a level");
  std::string render_level, out_ppm, out_pgm;
  render_cmd->add_option("level", render_level)->required();
  render_cmd->add_option("--out", out_ppm)->required();
  render_cmd->add_option("--classmap", out_pgm);

  CLI11_PARSE(app, argc, argv);

  if (*play) {
    opts.dump_dir = dump_dir;
    adopt_level_knowledge(play_level, opts);
    sling::agent::EpisodeResult r =
        play_agent == "sim" ? sling::agent::sim_agent_play(play_level, opts, seed)
                            : sling::agent::naive_agent_play(play_level, opts, seed);
    std::cout << "level " << r.level_id << " agent " << r.agent << "\n";
    for (std::size_t i = 0; i < r.shots.size(); ++i) {
      const auto& s = r.shots[i];
      std::cout << "shot " << i << " angle " << s.shot.angle;
      if (s.shot.tap_time) std::cout << " tap " << *s.shot.tap_time;
      std::cout << " score " << s.pre_score << " -> " << s.post_score << "\n";
    }
    std::cout << "final score " << r.final_score << " birds " << r.birds_used
              << " pigs_remaining " << r.pigs_remaining
              << (r.failed ? " FAILED" : " CLEARED") << "\n";
    return 0;
  }

  if (*bench_cmd) {
    auto paths = level_files_in(levels_dir);
    if (paths.empty()) {
      std::cerr << "no .lvl files in " << levels_dir << "\n";
      return 1;
    }
    adopt_level_knowledge(paths.front(), opts);
    auto report = sling::agent::bench(paths, trials, seed, opts);
    if (!bench_csv.empty()) {
      std::ofstream out(bench_csv, std::ios::binary);
      sling::agent::write_bench_csv(report, out);
    }
    std::cout << sling::agent::format_bench_table(report);
    return 0;
  }

  if (*perceive_cmd) {
    auto grid = sling::render::read_classmap(classmap_path);
    auto rec = sling::percept::perceive(grid, opts.perception);
    std::string report = sling::percept::describe(rec);
    if (!report_path.empty()) {
      std::ofstream out(report_path, std::ios::binary);
      out << report;
    }
    std::cout << report;
    if (!overlay_path.empty()) {
      auto imagined = sling::percept::to_scene(rec, opts.knowledge);
      auto regrid = sling::render::rasterize(imagined, grid.width, grid.height);
      sling::render::write_image(regrid, sling::render::default_palette(),
                                 overlay_path);
    }
    return 0;
  }

  if (*sim_cmd) {
    if (sweep) {
      adopt_level_knowledge(sim_level, opts);
      auto decision = plan_from_level(sim_level, opts);
      std::ostringstream csv;
      sling::plan::write_sweep_csv(decision, csv);
      if (!sweep_csv.empty()) {
        std::ofstream out(sweep_csv, std::ios::binary);
        out << csv.str();
      } else {
        std::cout << csv.str();
      }
      std::cout << "chosen angle " << decision.chosen.angle << " raw "
                << decision.raw_score << " robust " << decision.robust_score
                << "\n";
      return 0;
    }
    if (angle_opt->count() == 0) {
      std::cerr << "simulate needs --angle or --sweep\n";
      return 1;
    }
    auto scene = sling::world::load_level_file(sim_level);
    sling::world::Shot shot{sim_angle, sim_tap > 0.0
                                           ? std::optional<double>(sim_tap)
                                           : std::nullopt};
    sling::world::launch(scene, shot);
    int tap_step = shot.tap_time
                       ? static_cast<int>(std::lround(*shot.tap_time / opts.physics.dt))
                       : -1;
    std::ofstream trace;
    if (!trace_path.empty()) {
      trace.open(trace_path, std::ios::binary);
      trace << "step,time,score,state_hash\n";
    }
    const int max_steps =
        static_cast<int>(std::ceil(opts.planner.horizon / opts.physics.dt));
    for (int i = 1; i <= max_steps; ++i) {
      sling::phys::step(scene, opts.physics.dt, opts.physics);
      if (i == tap_step) {
        auto* bird = scene.find_body(scene.flying_bird);
        if (bird && bird->alive && !scene.tap_used) sling::world::tap(scene);
      }
      if (trace.is_open()) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%d,%.6f,%d,%llu\n", i, scene.time,
                      sling::world::current_score(scene),
                      static_cast<unsigned long long>(sling::phys::state_hash(scene)));
        trace << buf;
      }
      if (sling::phys::is_settled(scene, opts.physics) && i > tap_step) break;
    }
    std::cout << "score " << sling::world::current_score(scene)
              << " pigs_remaining " << scene.alive_pigs() << "\n";
    return 0;
  }

  if (*render_cmd) {
    auto scene = sling::world::load_level_file(render_level);
    auto grid = sling::render::rasterize(scene, opts.viewport_width,
                                         opts.viewport_height);
    sling::render::write_image(grid, sling::render::default_palette(), out_ppm);
    if (!out_pgm.empty()) sling::render::write_classmap(grid, out_pgm);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
