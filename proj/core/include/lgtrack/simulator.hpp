#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lgtrack/io.hpp"
#include "lgtrack/tracker.hpp"

namespace lgtrack::sim {

struct ObjectSpec {
  BBox start;
  double vx = 0.0;  // pixels per frame
  double vy = 0.0;
};

/// Object `object` (1-based id) is hidden over frames [start, end]. Depth
/// ramps linearly from the window edges over `ramp` frames up to `depth`.
struct OcclusionWindow {
  int object = 1;
  int start = 1;
  int end = 1;
  double depth = 1.0;
  int ramp = 0;
};

/// Maps occlusion depth and box jitter to confidences:
///   s_cls = clamp(1 - depth - |N(0, cls_noise_std)|, 0, 1)
///   s_loc = exp(-loc_scale * |box offset| / h)
///   s_det = s_cls * s_loc
struct ConfidenceModel {
  double cls_noise_std = 0.0;
  double loc_scale = 3.0;
  /// Extra box noise (fraction of height) at full occlusion depth.
  double occluded_box_noise = 0.15;
};

struct ScenarioSpec {
  std::uint64_t seed = 1;
  int n_objects = 3;
  int frame_count = 100;
  double arena_w = 1920.0;
  double arena_h = 1080.0;
  double speed_max = 4.0;
  /// Per-frame Gaussian offset of the true path, pixels.
  double jitter_std = 0.0;
  /// Detection box noise as a fraction of box height.
  double box_noise_std = 0.0;
  /// Explicit objects; when empty, n_objects are drawn from the seed.
  std::vector<ObjectSpec> objects;
  std::vector<OcclusionWindow> occlusions;
  ConfidenceModel conf_model;
  std::size_t embed_dim = 128;
  /// Norm of the Gaussian perturbation added to each object's embedding.
  double embed_noise_std = 0.0;
  /// Expected spurious detections per frame.
  double clutter_rate = 0.0;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

struct Simulation {
  std::vector<GroundTruthRow> ground_truth;  // frame-major, id-minor
  DetectionStream detections;
  /// Object id that produced each detection, parallel to detections.frames; 0 for clutter.
  std::vector<std::vector<int>> sources;
};

/// Occlusion depth of `object` at `frame`, in [0, 1].
double occlusion_depth(const ScenarioSpec& spec, int object, int frame);

Simulation simulate(const ScenarioSpec& spec);

/// Three objects in separate horizontal lanes, no noise, no occlusion.
ScenarioSpec easy_scenario(std::uint64_t seed);
/// Crowded scene with occlusions, box and appearance noise and clutter.
ScenarioSpec hard_scenario(std::uint64_t seed);
/// Three lanes; object 2 fully hidden for `hidden_frames` frames mid-sequence.
ScenarioSpec occlusion_scenario(std::uint64_t seed, int hidden_frames);

/// `key = value` scenario description. `preset` (easy, hard, occlusion)
/// replaces every field with the preset built from the current `seed`, so put
/// `seed` before it and overrides after it. `occlusion =
/// id:start:end[:depth[:ramp]]` repeats.
ScenarioSpec parse_scenario(std::istream& in, const std::string& source);
ScenarioSpec read_scenario(const std::filesystem::path& path);
void set_scenario_value(ScenarioSpec& spec, std::string_view key, std::string_view value);

}  // namespace lgtrack::sim
