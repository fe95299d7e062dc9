#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <ostream>

#include "lgtrack/ablation.hpp"
#include "lgtrack/config.hpp"
#include "lgtrack/errors.hpp"
#include "lgtrack/io.hpp"
#include "lgtrack/metrics.hpp"
#include "lgtrack/render.hpp"
#include "lgtrack/simulator.hpp"
#include "lgtrack/tracker.hpp"

namespace lgtrack::cli {

namespace {

struct TrackArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string config;
  std::vector<std::string> overrides;
  bool dump_config = false;
};

struct SimulateArgs {
  std::string scenario;
  std::string preset = "easy";
  std::uint64_t seed = 1;
  std::vector<std::string> overrides;
  std::string dets = "dets.csv";
  std::string gt = "gt.csv";
};

struct EvaluateArgs {
  std::string res;
  std::string gt;
  double iou = 0.5;
};

struct AblateArgs {
  std::string scenario;
  std::string preset = "hard";
  std::uint64_t seed = 1;
  int seeds = 10;
  std::vector<std::string> overrides;
  std::string config;
  std::vector<std::string> config_overrides;
  unsigned threads = 0;
  std::string out;
};

struct RenderArgs {
  std::string res;
  std::string out_dir = "frames";
  std::string frames;
  int width = 1920;
  int height = 1080;
};

RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
  RunConfig cfg = path.empty() ? RunConfig{} : read_config(path);
  for (const auto& o : overrides) apply_override(cfg, o);
  if (!cfg.tracker.valid()) throw InvalidArgument("configuration values out of range");
  return cfg;
}

sim::ScenarioSpec load_scenario(const std::string& path, const std::string& preset, std::uint64_t seed,
                                const std::vector<std::string>& overrides) {
  sim::ScenarioSpec spec;
  if (!path.empty()) {
    spec = sim::read_scenario(path);
  } else {
    spec.seed = seed;
    sim::set_scenario_value(spec, "preset", preset);
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw InvalidArgument("scenario override must be key=value: " + o);
    sim::set_scenario_value(spec, o.substr(0, eq), o.substr(eq + 1));
  }
  spec.validate();
  return spec;
}

int do_track(const TrackArgs& a, std::ostream& out) {
  RunConfig cfg = load_run_config(a.config, a.overrides);
  if (a.dump_config) {
    out << format_config(cfg);
    return 0;
  }
  std::vector<std::string> inputs = a.inputs;
  std::vector<std::string> outputs = a.outputs;
  if (inputs.empty() && !cfg.input.empty()) inputs.push_back(cfg.input);
  if (outputs.empty() && !cfg.output.empty()) outputs.push_back(cfg.output);
  if (inputs.empty()) throw InvalidArgument("track: no input given (--in or input = ...)");
  if (inputs.size() != outputs.size()) {
    throw InvalidArgument("track: need one --out per --in");
  }

  // One tracker per sequence; sequences run concurrently.
  std::vector<std::future<std::size_t>> jobs;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      const auto stream = read_detections(inputs[i]);
      const auto rows = run_sequence(stream, cfg.tracker);
      write_tracks(rows, outputs[i]);
      return rows.size();
    }));
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::size_t n = jobs[i].get();
    out << inputs[i] << " -> " << outputs[i] << ": " << n << " rows\n";
  }
  return 0;
}

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  const auto spec = load_scenario(a.scenario, a.preset, a.seed, a.overrides);
  const auto sim = sim::simulate(spec);
  write_detections(sim.detections, a.dets);
  write_ground_truth(sim.ground_truth, a.gt);
  out << "wrote " << sim.detections.detection_count() << " detections to " << a.dets << " and "
      << sim.ground_truth.size() << " ground-truth rows to " << a.gt << "\n";
  return 0;
}

int do_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto res = read_tracks(a.res);
  const auto gt = read_ground_truth(a.gt);
  const auto m = sim::evaluate(res, gt, a.iou);
  char buf[256];
  std::snprintf(buf, sizeof(buf), "MOTA=%.3f\tIDF1=%.3f\tIDSW=%ld\tFP=%ld\tFN=%ld\tGT=%ld\n", m.mota,
                m.idf1, m.idsw, m.fp, m.fn, m.gt_count);
  out << buf;
  return 0;
}

int do_ablate(const AblateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.seeds < 1) throw InvalidArgument("ablate: --seeds must be >= 1");
  const RunConfig cfg = load_run_config(a.config, a.config_overrides);
  std::vector<sim::ScenarioSpec> scenarios;
  for (int k = 0; k < a.seeds; ++k) {
    auto spec = load_scenario(a.scenario, a.preset, a.seed + static_cast<std::uint64_t>(k), a.overrides);
    spec.seed = a.seed + static_cast<std::uint64_t>(k);
    scenarios.push_back(std::move(spec));
  }
  const auto grid = sim::standard_grid();
  const auto rows = sim::ablate(scenarios, grid, cfg.tracker, a.threads);
  const std::string table = sim::format_ablation_table(rows);
  out << table;
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!(f << table)) throw Error("failed writing " + a.out);
  }
  const auto& baseline = rows.front();
  const auto& all_on = rows[7];
  if (all_on.idsw > baseline.idsw) {
    err << "warning: all-on mean IDSW " << all_on.idsw << " exceeds baseline " << baseline.idsw << "\n";
  }
  return 0;
}

int do_render(const RenderArgs& a, std::ostream& out) {
  const auto rows = read_tracks(a.res);
  render::RenderOptions opts;
  opts.width = a.width;
  opts.height = a.height;
  opts.frames_dir = a.frames;
  const int n = render::render_tracks(rows, a.out_dir, opts);
  out << "wrote " << n << " images to " << a.out_dir << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lgtrack: multi-object tracking over precomputed detections", "lgtrack"};
  app.require_subcommand(1);

  TrackArgs track;
  auto* track_cmd = app.add_subcommand("track", "Track one or more detection files");
  track_cmd->add_option("--in", track.inputs, "Detection CSV (repeatable)");
  track_cmd->add_option("--out", track.outputs, "MOT result file (one per --in)");
  track_cmd->add_option("--config", track.config, "key = value configuration file")->check(CLI::ExistingFile);
  track_cmd->add_option("--set", track.overrides, "Configuration override key=value (repeatable)");
  track_cmd->add_flag("--dump-config", track.dump_config, "Print the effective configuration and exit");

  SimulateArgs simulate;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic detection file and ground truth");
  sim_cmd->add_option("--scenario", simulate.scenario, "Scenario file")->check(CLI::ExistingFile);
  sim_cmd->add_option("--preset", simulate.preset, "easy, hard or occlusion")
      ->check(CLI::IsMember({"easy", "hard", "occlusion"}));
  sim_cmd->add_option("--seed", simulate.seed, "RNG seed");
  sim_cmd->add_option("--set", simulate.overrides, "Scenario override key=value (repeatable)");
  sim_cmd->add_option("--dets", simulate.dets, "Detection CSV to write (sidecar alongside)");
  sim_cmd->add_option("--gt", simulate.gt, "Ground-truth CSV to write");

  EvaluateArgs evaluate;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a result file against ground truth");
  eval_cmd->add_option("--res", evaluate.res, "MOT result file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--gt", evaluate.gt, "Ground-truth CSV")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--iou", evaluate.iou, "IoU needed for a match")->check(CLI::Range(0.0, 1.0));

  AblateArgs ablate;
  auto* ablate_cmd = app.add_subcommand("ablate", "Run the component toggle grid over simulated seeds");
  ablate_cmd->add_option("--scenario", ablate.scenario, "Scenario file")->check(CLI::ExistingFile);
  ablate_cmd->add_option("--preset", ablate.preset, "easy, hard or occlusion")
      ->check(CLI::IsMember({"easy", "hard", "occlusion"}));
  ablate_cmd->add_option("--seed", ablate.seed, "First seed");
  ablate_cmd->add_option("--seeds", ablate.seeds, "Number of consecutive seeds");
  ablate_cmd->add_option("--set", ablate.overrides, "Scenario override key=value (repeatable)");
  ablate_cmd->add_option("--config", ablate.config, "Base tracker configuration")->check(CLI::ExistingFile);
  ablate_cmd->add_option("--config-set", ablate.config_overrides, "Tracker override key=value");
  ablate_cmd->add_option("--threads", ablate.threads, "Worker threads (0 = hardware)");
  ablate_cmd->add_option("--out", ablate.out, "Also write the table here");

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Draw tracked boxes and ids into PPM images");
  render_cmd->add_option("--res", render.res, "MOT result file")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--out-dir", render.out_dir, "Output directory");
  render_cmd->add_option("--frames", render.frames, "Directory of frame_NNNNNN.ppm backgrounds")
      ->check(CLI::ExistingDirectory);
  render_cmd->add_option("--width", render.width, "Canvas width")->check(CLI::PositiveNumber);
  render_cmd->add_option("--height", render.height, "Canvas height")->check(CLI::PositiveNumber);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*track_cmd) return do_track(track, out);
    if (*sim_cmd) return do_simulate(simulate, out);
    if (*eval_cmd) return do_evaluate(evaluate, out);
    if (*ablate_cmd) return do_ablate(ablate, out, err);
    if (*render_cmd) return do_render(render, out);
  } catch (const std::exception& e) {
    err << "lgtrack: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace lgtrack::cli
