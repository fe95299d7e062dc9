#include "lgtrack/appearance.hpp"

#include <algorithm>
#include <cmath>

#include "lgtrack/errors.hpp"

namespace lgtrack {

namespace {

// 1 - (s - th) / (1 - th), limited to [0, 1].
double bracket(double s, double th) { return std::clamp(1.0 - (s - th) / (1.0 - th), 0.0, 1.0); }

}  // namespace

const char* to_string(FeatureMode m) {
  switch (m) {
    case FeatureMode::EMA:
      return "ema";
    case FeatureMode::DA:
      return "da";
    case FeatureMode::SDA:
      return "sda";
  }
  return "?";
}

bool FeatureUpdatePolicy::valid() const {
  auto open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  return open_unit(c) && open_unit(th_det) && open_unit(th_cls) && open_unit(th_loc) &&
         alpha_ema >= 0.0 && alpha_ema <= 1.0;
}

double alpha_da(double s_det, const FeatureUpdatePolicy& policy) {
  return policy.c + (1.0 - policy.c) * bracket(s_det, policy.th_det);
}

double alpha_sda(double s_cls, double s_loc, const FeatureUpdatePolicy& policy) {
  // c + c_cls * b_cls + c_loc * b_loc with c_cls = 0.8 (1 - c), c_loc = 0.2 (1 - c);
  // factored so both brackets at 1 give exactly 1.
  const double mix = 0.8 * bracket(s_cls, policy.th_cls) + 0.2 * bracket(s_loc, policy.th_loc);
  return policy.c + (1.0 - policy.c) * mix;
}

double select_alpha(const Detection& det, const FeatureUpdatePolicy& policy) {
  switch (policy.mode) {
    case FeatureMode::EMA:
      return policy.alpha_ema;
    case FeatureMode::DA:
      return alpha_da(det.conf.s_det, policy);
    case FeatureMode::SDA:
      return alpha_sda(det.conf.s_cls, det.conf.s_loc, policy);
  }
  return 1.0;
}

FeatureBlend update_feature(const Embedding& prev, const Embedding& next, double alpha) {
  if (prev.dim() != next.dim()) {
    throw DimensionMismatch("cannot blend embeddings of different dimension");
  }
  if (alpha >= 1.0) return {prev, false};
  const Eigen::VectorXd blend = alpha * prev.values() + (1.0 - alpha) * next.values();
  const double n = blend.norm();
  if (!(n > 1e-12) || !std::isfinite(n)) return {prev, true};
  return {normalize(blend), false};
}

}  // namespace lgtrack
