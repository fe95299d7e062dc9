#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lgtrack/errors.hpp"
#include "lgtrack/geometry.hpp"
#include "oracles.hpp"

using namespace lgtrack;

TEST(GeometryTest, IouOfHalfOverlap) {
  const BBox a{0, 0, 10, 10};
  const BBox b{5, 0, 10, 10};
  EXPECT_DOUBLE_EQ(iou(a, b), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(iou_cost(a, b), 2.0 / 3.0);
}

TEST(GeometryTest, IouIdenticalAndDisjoint) {
  const BBox a{3, 4, 20, 30};
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(a, BBox{100, 100, 5, 5}), 0.0);
  // Touching edges share no area.
  EXPECT_DOUBLE_EQ(iou(a, BBox{23, 4, 5, 5}), 0.0);
}

TEST(GeometryTest, IouMatchesOracleAndIsSymmetric) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(0.0, 50.0), size(1.0, 40.0);
  for (int i = 0; i < 500; ++i) {
    const BBox a{pos(rng), pos(rng), size(rng), size(rng)};
    const BBox b{pos(rng), pos(rng), size(rng), size(rng)};
    const double v = iou(a, b);
    EXPECT_NEAR(v, oracle::box_iou(a, b), 1e-12);
    EXPECT_DOUBLE_EQ(v, iou(b, a));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(GeometryTest, CheckedRejectsDegenerateBoxes) {
  EXPECT_NO_THROW(BBox::checked(0, 0, 1, 1));
  EXPECT_THROW(BBox::checked(0, 0, 0, 1), InvalidArgument);
  EXPECT_THROW(BBox::checked(0, 0, 1, -2), InvalidArgument);
  EXPECT_THROW(BBox::checked(NAN, 0, 1, 1), InvalidArgument);
  EXPECT_THROW(BBox::checked(0, INFINITY, 1, 1), InvalidArgument);
}

TEST(GeometryTest, FromCenterRoundTrips) {
  const BBox b = BBox::from_center(50, 60, 10, 20);
  EXPECT_DOUBLE_EQ(b.x, 45);
  EXPECT_DOUBLE_EQ(b.y, 50);
  EXPECT_DOUBLE_EQ(b.center_x(), 50);
  EXPECT_DOUBLE_EQ(b.center_y(), 60);
}

TEST(GeometryTest, ConfidenceRange) {
  EXPECT_TRUE((ConfidenceTriple{0, 0, 0}.valid()));
  EXPECT_TRUE((ConfidenceTriple{1, 1, 1}.valid()));
  EXPECT_FALSE((ConfidenceTriple{1.01, 1, 1}.valid()));
  EXPECT_FALSE((ConfidenceTriple{1, -0.1, 1}.valid()));
  EXPECT_FALSE((ConfidenceTriple{1, 1, NAN}.valid()));
}

TEST(GeometryTest, NormalizeProducesUnitVector) {
  const std::vector<double> v{3.0, 4.0};
  const Embedding e = normalize(v);
  ASSERT_EQ(e.dim(), 2u);
  EXPECT_DOUBLE_EQ(e.values()(0), 0.6);
  EXPECT_DOUBLE_EQ(e.values()(1), 0.8);
}

TEST(GeometryTest, NormalizeRejectsZeroAndNonFinite) {
  EXPECT_THROW(normalize(std::vector<double>{0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(normalize(std::vector<double>{NAN, 1.0}), InvalidArgument);
}

TEST(GeometryTest, CosineCost) {
  const Embedding a = normalize(std::vector<double>{1.0, 0.0});
  const Embedding b = normalize(std::vector<double>{0.8, 0.6});
  EXPECT_NEAR(cosine_cost(a, b), 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(cosine_cost(a, a), 0.0);
  // Opposite directions clamp at 1.
  const Embedding c = normalize(std::vector<double>{-1.0, 0.0});
  EXPECT_DOUBLE_EQ(cosine_cost(a, c), 1.0);
}

TEST(GeometryTest, DotRejectsDimensionMismatch) {
  const Embedding a = normalize(std::vector<double>{1.0, 0.0});
  const Embedding b = normalize(std::vector<double>{1.0, 0.0, 0.0});
  EXPECT_THROW(a.dot(b), DimensionMismatch);
  EXPECT_THROW(cosine_cost(a, b), DimensionMismatch);
}

TEST(GeometryTest, EnsureUnitKeepsNearUnitVectorsVerbatim) {
  Eigen::VectorXd v(2);
  v << 0.6, 0.8000001;
  EXPECT_EQ(ensure_unit(v).values(), v);
  v << 3.0, 4.0;
  EXPECT_NEAR(ensure_unit(v).values().norm(), 1.0, 1e-15);
}

TEST(GeometryTest, DetectionValidity) {
  Detection d;
  d.frame = 1;
  d.bbox = {0, 0, 5, 5};
  EXPECT_TRUE(d.valid());
  d.frame = 0;
  EXPECT_FALSE(d.valid());
  d.frame = 2;
  d.conf.s_loc = 2.0;
  EXPECT_FALSE(d.valid());
}
