#pragma once

#include <Eigen/Core>

#include <optional>
#include <span>

namespace lgtrack {

/// Axis-aligned box in pixels, top-left corner plus size.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;
  double h = 1.0;

  double area() const { return w * h; }
  double center_x() const { return x + 0.5 * w; }
  double center_y() const { return y + 0.5 * h; }

  /// Finite fields and strictly positive size.
  bool valid() const;

  /// Builds a box and throws InvalidArgument if it is not valid().
  static BBox checked(double x, double y, double w, double h);
  static BBox from_center(double cx, double cy, double w, double h);

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Detector scores. s_det integrates the other two; the relation is not enforced.
struct ConfidenceTriple {
  double s_det = 1.0;
  double s_cls = 1.0;
  double s_loc = 1.0;

  bool valid() const;

  friend bool operator==(const ConfidenceTriple&, const ConfidenceTriple&) = default;
};

/// Unit-norm appearance feature. Only constructible through normalize().
class Embedding {
 public:
  std::size_t dim() const { return static_cast<std::size_t>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }
  double dot(const Embedding& other) const;

  friend bool operator==(const Embedding& a, const Embedding& b) { return a.values_ == b.values_; }

 private:
  friend Embedding normalize(const Eigen::Ref<const Eigen::VectorXd>& v);
  friend Embedding ensure_unit(const Eigen::Ref<const Eigen::VectorXd>& v, double tol);
  explicit Embedding(Eigen::VectorXd v) : values_(std::move(v)) {}

  Eigen::VectorXd values_;
};

struct Detection {
  int frame = 1;
  BBox bbox;
  ConfidenceTriple conf;
  std::optional<Embedding> embedding;

  bool valid() const;
};

double iou(const BBox& a, const BBox& b);

/// 1 - iou(a, b).
double iou_cost(const BBox& a, const BBox& b);

/// clamp(1 - a.b, 0, 1). Throws DimensionMismatch when the dimensions differ.
double cosine_cost(const Embedding& a, const Embedding& b);

/// Scales `v` to unit Euclidean norm. Throws InvalidArgument on a zero or
/// non-finite norm.
Embedding normalize(const Eigen::Ref<const Eigen::VectorXd>& v);
Embedding normalize(std::span<const double> v);

/// Keeps `v` verbatim when its norm is already within `tol` of 1, otherwise
/// normalizes it. Lets float32 storage round-trip bit-exactly.
Embedding ensure_unit(const Eigen::Ref<const Eigen::VectorXd>& v, double tol = 1e-6);

}  // namespace lgtrack
