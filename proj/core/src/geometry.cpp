#include "lgtrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgtrack/errors.hpp"

namespace lgtrack {

bool BBox::valid() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(w) && std::isfinite(h) && w > 0.0 &&
         h > 0.0;
}

BBox BBox::checked(double x, double y, double w, double h) {
  BBox b{x, y, w, h};
  if (!b.valid()) {
    throw InvalidArgument("invalid box (" + std::to_string(x) + ", " + std::to_string(y) + ", " +
                          std::to_string(w) + ", " + std::to_string(h) + ")");
  }
  return b;
}

BBox BBox::from_center(double cx, double cy, double w, double h) {
  return BBox{cx - 0.5 * w, cy - 0.5 * h, w, h};
}

bool ConfidenceTriple::valid() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  return in_unit(s_det) && in_unit(s_cls) && in_unit(s_loc);
}

double Embedding::dot(const Embedding& other) const {
  if (dim() != other.dim()) {
    throw DimensionMismatch("embedding dimensions differ: " + std::to_string(dim()) + " vs " +
                            std::to_string(other.dim()));
  }
  return values_.dot(other.values_);
}

bool Detection::valid() const { return frame >= 1 && bbox.valid() && conf.valid(); }

double iou(const BBox& a, const BBox& b) {
  const double ix = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double iy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double iou_cost(const BBox& a, const BBox& b) { return 1.0 - iou(a, b); }

double cosine_cost(const Embedding& a, const Embedding& b) {
  return std::clamp(1.0 - a.dot(b), 0.0, 1.0);
}

Embedding normalize(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("embedding has zero or non-finite norm");
  }
  return Embedding(v / n);
}

Embedding normalize(std::span<const double> v) {
  return normalize(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

Embedding ensure_unit(const Eigen::Ref<const Eigen::VectorXd>& v, double tol) {
  const double n = v.norm();
  if (std::isfinite(n) && std::abs(n - 1.0) <= tol && v.allFinite()) return Embedding(v);
  return normalize(v);
}

}  // namespace lgtrack
