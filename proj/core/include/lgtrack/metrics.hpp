#pragma once

#include <span>

#include "lgtrack/io.hpp"
#include "lgtrack/tracker.hpp"

namespace lgtrack::sim {

struct MetricsReport {
  double mota = 0.0;
  double idf1 = 0.0;
  long idsw = 0;
  long fp = 0;
  long fn = 0;
  long gt_count = 0;
  long pred_count = 0;
  long matches = 0;
  long idtp = 0;
};

/// CLEAR MOT counts and IDF1.
///
/// Per frame, ground-truth objects keep last frame's hypothesis when it is
/// still present with IoU >= `iou_threshold`; the rest are paired by a
/// minimum-cost assignment over 1 - IoU restricted to pairs above threshold
/// (maximum cardinality first). A match whose hypothesis differs from the
/// object's previous one is an identity switch. IDF1 uses the one-to-one
/// ground-truth/hypothesis id correspondence maximizing co-detected frames.
///
/// Throws InvalidArgument on empty ground truth, results outside the ground
/// truth frame range, or duplicate ids within a frame.
MetricsReport evaluate(std::span<const TrackOutput> results, std::span<const GroundTruthRow> truth,
                       double iou_threshold = 0.5);

}  // namespace lgtrack::sim
