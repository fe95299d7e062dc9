#include "lgtrack/association.hpp"

#include <algorithm>

namespace lgtrack {

const char* to_string(TrackState s) {
  switch (s) {
    case TrackState::New:
      return "New";
    case TrackState::Tracked:
      return "Tracked";
    case TrackState::Lost:
      return "Lost";
    case TrackState::Removed:
      return "Removed";
  }
  return "?";
}

bool CascadeConfig::valid() const {
  return th_low >= 0.0 && th_low < th_high && th_high <= 1.0 && iou_min >= 0.0 && iou_min < 1.0 &&
         max_cost > 0.0;
}

double fused_cost(const Detection& det, const BBox& track_box,
                  const std::optional<Embedding>& track_feature, CostWeighting weighting) {
  const double motion = iou_cost(det.bbox, track_box);
  const double appearance =
      (det.embedding && track_feature) ? cosine_cost(*det.embedding, *track_feature) : 1.0;
  if (weighting == CostWeighting::Uniform) return motion + appearance;
  return motion * det.conf.s_loc + appearance * det.conf.s_det;
}

CostMatrix build_cost_matrix(std::span<const Detection> dets, std::span<const TrackView> tracks,
                             CostWeighting weighting) {
  CostMatrix c(static_cast<Eigen::Index>(dets.size()), static_cast<Eigen::Index>(tracks.size()));
  for (std::size_t i = 0; i < dets.size(); ++i) {
    for (std::size_t j = 0; j < tracks.size(); ++j) {
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          fused_cost(dets[i], tracks[j].box, tracks[j].feature, weighting);
    }
  }
  return c;
}

AssignmentResult gate_by_iou(const AssignmentResult& result, std::span<const Detection> dets,
                             std::span<const TrackView> tracks, double iou_min) {
  AssignmentResult out;
  out.unmatched_rows = result.unmatched_rows;
  out.unmatched_cols = result.unmatched_cols;
  for (const auto& [d, t] : result.matches) {
    if (iou(dets[d].bbox, tracks[t].box) >= iou_min) {
      out.matches.emplace_back(d, t);
    } else {
      out.unmatched_rows.push_back(d);
      out.unmatched_cols.push_back(t);
    }
  }
  std::sort(out.unmatched_rows.begin(), out.unmatched_rows.end());
  std::sort(out.unmatched_cols.begin(), out.unmatched_cols.end());
  return out;
}

void mask_infeasible(CostMatrix& costs, std::span<const Detection> dets,
                     std::span<const TrackView> tracks, const CascadeConfig& cfg) {
  // Larger than any sum of feasible entries, so the solver maximizes the
  // number of feasible pairs before minimizing their cost.
  const double blocked = kInfeasibleCost * static_cast<double>(1 + std::max(costs.rows(), costs.cols()));
  for (Eigen::Index i = 0; i < costs.rows(); ++i) {
    for (Eigen::Index j = 0; j < costs.cols(); ++j) {
      if (costs(i, j) > cfg.max_cost || iou(dets[i].bbox, tracks[j].box) < cfg.iou_min) {
        costs(i, j) = blocked;
      }
    }
  }
}

std::vector<std::pair<int, int>> CascadeResult::all_matches() const {
  std::vector<std::pair<int, int>> all;
  for (const auto& level : levels) all.insert(all.end(), level.matches.begin(), level.matches.end());
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

// Matches a subset of detections against a subset of tracks. Returns matches
// in global indices and the leftovers of both subsets.
struct SubsetOutcome {
  std::vector<std::pair<int, int>> matches;
  std::vector<int> left_dets;
  std::vector<int> left_tracks;
};

SubsetOutcome match_subset(std::span<const Detection> dets, std::span<const TrackView> tracks,
                           const std::vector<int>& det_idx, const std::vector<int>& track_idx,
                           const CascadeConfig& cfg, CostWeighting weighting) {
  std::vector<Detection> sub_dets;
  std::vector<TrackView> sub_tracks;
  sub_dets.reserve(det_idx.size());
  sub_tracks.reserve(track_idx.size());
  for (int i : det_idx) sub_dets.push_back(dets[i]);
  for (int j : track_idx) sub_tracks.push_back(tracks[j]);

  CostMatrix costs = build_cost_matrix(sub_dets, sub_tracks, weighting);
  mask_infeasible(costs, sub_dets, sub_tracks, cfg);
  const AssignmentResult gated =
      gate_by_iou(solve_assignment(costs, cfg.max_cost), sub_dets, sub_tracks, cfg.iou_min);

  SubsetOutcome out;
  for (const auto& [d, t] : gated.matches) out.matches.emplace_back(det_idx[d], track_idx[t]);
  for (int d : gated.unmatched_rows) out.left_dets.push_back(det_idx[d]);
  for (int t : gated.unmatched_cols) out.left_tracks.push_back(track_idx[t]);
  return out;
}

}  // namespace

CascadeResult run_cascade(std::span<const Detection> dets, std::span<const TrackView> tracks,
                          const CascadeConfig& cfg, CostWeighting weighting) {
  CascadeResult result;
  std::vector<int> high, low;
  for (int i = 0; i < static_cast<int>(dets.size()); ++i) {
    const double s = dets[i].conf.s_det;
    if (s >= cfg.th_high) {
      high.push_back(i);
    } else if (s >= cfg.th_low) {
      low.push_back(i);
    } else {
      result.discarded_detections.push_back(i);
    }
  }
  std::vector<int> active, fresh;
  for (int j = 0; j < static_cast<int>(tracks.size()); ++j) {
    switch (tracks[j].state) {
      case TrackState::Tracked:
      case TrackState::Lost:
        active.push_back(j);
        break;
      case TrackState::New:
        fresh.push_back(j);
        break;
      case TrackState::Removed:
        break;
    }
  }

  SubsetOutcome first = match_subset(dets, tracks, high, active, cfg, weighting);

  std::vector<int> still_tracked;
  std::vector<int> lost_left;
  for (int j : first.left_tracks) {
    (tracks[j].state == TrackState::Tracked ? still_tracked : lost_left).push_back(j);
  }
  SubsetOutcome second = match_subset(dets, tracks, low, still_tracked, cfg, weighting);
  SubsetOutcome third = match_subset(dets, tracks, first.left_dets, fresh, cfg, weighting);

  result.levels = {CascadeLevel{1, std::move(first.matches)},
                   CascadeLevel{2, std::move(second.matches)},
                   CascadeLevel{3, std::move(third.matches)}};

  result.unmatched_detections = second.left_dets;
  result.unmatched_detections.insert(result.unmatched_detections.end(), third.left_dets.begin(),
                                     third.left_dets.end());
  std::sort(result.unmatched_detections.begin(), result.unmatched_detections.end());

  result.unmatched_tracks = lost_left;
  result.unmatched_tracks.insert(result.unmatched_tracks.end(), second.left_tracks.begin(),
                                 second.left_tracks.end());
  result.unmatched_tracks.insert(result.unmatched_tracks.end(), third.left_tracks.begin(),
                                 third.left_tracks.end());
  std::sort(result.unmatched_tracks.begin(), result.unmatched_tracks.end());
  return result;
}

}  // namespace lgtrack
