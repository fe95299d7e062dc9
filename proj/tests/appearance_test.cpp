#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "formula_tables.hpp"
#include "lgtrack/appearance.hpp"
#include "lgtrack/errors.hpp"

using namespace lgtrack;

TEST(FeatureWeightTest, DaMatchesFrozenValues) {
  const FeatureUpdatePolicy p;
  for (const auto& c : tables::kDa) {
    EXPECT_NEAR(alpha_da(c.s_det, p), c.expected, 1e-9 * c.expected) << "s_det=" << c.s_det;
  }
}

TEST(FeatureWeightTest, SdaMatchesFrozenValues) {
  const FeatureUpdatePolicy p;
  for (const auto& c : tables::kSda) {
    EXPECT_NEAR(alpha_sda(c.s_cls, c.s_loc, p), c.expected, 1e-9 * c.expected)
        << "s_cls=" << c.s_cls << " s_loc=" << c.s_loc;
  }
}

TEST(FeatureWeightTest, SubWeightsSumToOneMinusC) {
  const FeatureUpdatePolicy p;
  EXPECT_NEAR(p.c_cls(), 0.04, 1e-15);
  EXPECT_NEAR(p.c_loc(), 0.01, 1e-15);
  EXPECT_NEAR(p.c + p.c_cls() + p.c_loc(), 1.0, 1e-15);
}

TEST(FeatureWeightTest, WeightsStayInRange) {
  const FeatureUpdatePolicy p;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double a = alpha_sda(i / 100.0, j / 100.0, p);
      EXPECT_GE(a, p.c);
      EXPECT_LE(a, 1.0);
    }
    const double d = alpha_da(i / 100.0, p);
    EXPECT_GE(d, p.c);
    EXPECT_LE(d, 1.0);
  }
}

TEST(FeatureWeightTest, NonIncreasingInConfidence) {
  const FeatureUpdatePolicy p;
  for (int i = 1; i <= 100; ++i) {
    EXPECT_LE(alpha_da(i / 100.0, p), alpha_da((i - 1) / 100.0, p));
    EXPECT_LE(alpha_sda(i / 100.0, 0.7, p), alpha_sda((i - 1) / 100.0, 0.7, p));
    EXPECT_LE(alpha_sda(0.8, i / 100.0, p), alpha_sda(0.8, (i - 1) / 100.0, p));
  }
}

TEST(FeatureWeightTest, SelectAlphaFollowsMode) {
  Detection d;
  d.conf = {0.8, 0.9, 0.7};
  FeatureUpdatePolicy p;
  p.mode = FeatureMode::EMA;
  EXPECT_DOUBLE_EQ(select_alpha(d, p), 0.9);
  p.mode = FeatureMode::DA;
  EXPECT_DOUBLE_EQ(select_alpha(d, p), alpha_da(0.8, p));
  p.mode = FeatureMode::SDA;
  EXPECT_DOUBLE_EQ(select_alpha(d, p), alpha_sda(0.9, 0.7, p));
}

TEST(FeatureUpdateTest, BlendIsRenormalized) {
  const Embedding prev = normalize(std::vector<double>{1, 0});
  const Embedding next = normalize(std::vector<double>{0, 1});
  const FeatureBlend b = update_feature(prev, next, 0.9);
  EXPECT_FALSE(b.degenerate);
  EXPECT_NEAR(b.feature.values()(0), 0.9 / std::sqrt(0.82), 1e-12);
  EXPECT_NEAR(b.feature.values()(1), 0.1 / std::sqrt(0.82), 1e-12);
}

TEST(FeatureUpdateTest, UnitWeightKeepsPrevious) {
  const Embedding prev = normalize(std::vector<double>{1, 2});
  const Embedding next = normalize(std::vector<double>{2, -1});
  EXPECT_EQ(update_feature(prev, next, 1.0).feature, prev);
}

TEST(FeatureUpdateTest, CancellingBlendKeepsPrevious) {
  const Embedding prev = normalize(std::vector<double>{1, 0});
  const Embedding next = normalize(std::vector<double>{-1, 0});
  const FeatureBlend b = update_feature(prev, next, 0.5);
  EXPECT_TRUE(b.degenerate);
  EXPECT_EQ(b.feature, prev);
}

TEST(FeatureUpdateTest, DimensionMismatchThrows) {
  const Embedding a = normalize(std::vector<double>{1, 0});
  const Embedding b = normalize(std::vector<double>{1, 0, 0});
  EXPECT_THROW(update_feature(a, b, 0.9), DimensionMismatch);
}

TEST(FeatureUpdateTest, ResultIsUnitNorm) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0, 1);
  std::uniform_real_distribution<double> a(0.0, 0.99);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(16), y(16);
    for (auto& v : x) v = n(rng);
    for (auto& v : y) v = n(rng);
    const auto b = update_feature(normalize(x), normalize(y), a(rng));
    EXPECT_NEAR(b.feature.values().norm(), 1.0, 1e-12);
  }
}

TEST(FeatureUpdateTest, PolicyValidation) {
  FeatureUpdatePolicy p;
  EXPECT_TRUE(p.valid());
  p.c = 1.0;
  EXPECT_FALSE(p.valid());
  p = {};
  p.th_cls = 0.0;
  EXPECT_FALSE(p.valid());
  EXPECT_STREQ(to_string(FeatureMode::SDA), "sda");
}
