#pragma once

#include "lgtrack/geometry.hpp"

namespace lgtrack {

enum class FeatureMode { EMA, DA, SDA };

const char* to_string(FeatureMode m);

/// Controls how strongly a track's smoothed feature follows new observations.
/// The blend weight alpha is the share kept from the previous feature.
struct FeatureUpdatePolicy {
  FeatureMode mode = FeatureMode::SDA;
  double alpha_ema = 0.9;
  double c = 0.95;
  double th_det = 0.6;
  double th_cls = 0.75;
  double th_loc = 0.55;

  bool valid() const;
  double c_cls() const { return 4.0 * (1.0 - c) / 5.0; }
  double c_loc() const { return (1.0 - c) / 5.0; }
};

/// Detection-confidence driven weight, in [c, 1]. Detections at or below
/// th_det give 1 (no update).
double alpha_da(double s_det, const FeatureUpdatePolicy& policy);

/// Weight driven separately by classification and localization confidence,
/// in [c, 1]. Each bracket term is clamped to [0, 1] before weighting.
double alpha_sda(double s_cls, double s_loc, const FeatureUpdatePolicy& policy);

double select_alpha(const Detection& det, const FeatureUpdatePolicy& policy);

struct FeatureBlend {
  Embedding feature;
  bool degenerate = false;  // blend cancelled out; `feature` is the previous one
};

/// normalize(alpha * prev + (1 - alpha) * next). alpha == 1 returns prev untouched.
FeatureBlend update_feature(const Embedding& prev, const Embedding& next, double alpha);

}  // namespace lgtrack
