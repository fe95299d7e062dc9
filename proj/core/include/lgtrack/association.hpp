#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lgtrack/assignment.hpp"
#include "lgtrack/geometry.hpp"

namespace lgtrack {

enum class TrackState { New, Tracked, Lost, Removed };

const char* to_string(TrackState s);

/// Thresholds of the three-level association cascade.
struct CascadeConfig {
  double th_high = 0.6;
  double th_low = 0.1;
  double iou_min = 0.1;
  double max_cost = 1.4;

  bool valid() const;
};

/// How motion and appearance costs are weighted in the fused cost.
enum class CostWeighting {
  Confidence,  // motion by s_loc, appearance by s_det
  Uniform,     // both weights fixed to 1
};

/// What the association stage needs to know about a track.
struct TrackView {
  BBox box;
  std::optional<Embedding> feature;
  TrackState state = TrackState::Tracked;
};

/// iou_cost * s_loc + cosine_cost * s_det. A missing embedding on either side
/// counts as the worst appearance cost, 1.
double fused_cost(const Detection& det, const BBox& track_box,
                  const std::optional<Embedding>& track_feature,
                  CostWeighting weighting = CostWeighting::Confidence);

CostMatrix build_cost_matrix(std::span<const Detection> dets, std::span<const TrackView> tracks,
                             CostWeighting weighting = CostWeighting::Confidence);

/// Demotes matches whose raw IoU is below `iou_min`. Indices in `result`
/// refer to positions in `dets` and `tracks`.
AssignmentResult gate_by_iou(const AssignmentResult& result, std::span<const Detection> dets,
                             std::span<const TrackView> tracks, double iou_min);

/// Cost given to pairs that fail the IoU gate or exceed max_cost.
inline constexpr double kInfeasibleCost = 1e6;

/// Replaces entries of pairs that could never survive the post-solve checks
/// (cost above max_cost, IoU below iou_min) with a blocking value. Without
/// this, a low-confidence detection whose fused cost is small against every
/// track can win a spatially impossible pair and push out a valid one.
void mask_infeasible(CostMatrix& costs, std::span<const Detection> dets,
                     std::span<const TrackView> tracks, const CascadeConfig& cfg);

struct CascadeLevel {
  int level = 0;
  /// (detection index, track index) into the cascade inputs.
  std::vector<std::pair<int, int>> matches;
};

struct CascadeResult {
  std::vector<CascadeLevel> levels;  // always three, in order
  std::vector<int> unmatched_detections;  // excludes discarded ones
  std::vector<int> unmatched_tracks;      // every non-Removed track left over
  std::vector<int> discarded_detections;  // s_det below th_low

  /// All matches across levels, sorted by detection index.
  std::vector<std::pair<int, int>> all_matches() const;
};

/// Level 1: detections with s_det >= th_high against Tracked and Lost tracks.
/// Level 2: detections with th_low <= s_det < th_high against Tracked tracks
///          left over from level 1.
/// Level 3: high-confidence detections left over from level 1 against New tracks.
/// Every level uses the fused cost, masks infeasible pairs, then runs the
/// exact solver with max_cost and the IoU gate.
CascadeResult run_cascade(std::span<const Detection> dets, std::span<const TrackView> tracks,
                          const CascadeConfig& cfg,
                          CostWeighting weighting = CostWeighting::Confidence);

}  // namespace lgtrack
