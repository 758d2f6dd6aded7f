#include <gtest/gtest.h>

#include "rbpr/model.hpp"
#include "support/oracles.hpp"

using rbpr::BiasKind;
using rbpr::GammaKind;
using rbpr::MetricConfig;
using rbpr::RangeSeries;
using rbpr::TimeRange;
namespace oracle = rbpr::oracle;

namespace {

MetricConfig reciprocal_flat(double alpha = 0.0) {
  MetricConfig c;
  c.alpha = alpha;
  c.recall_gamma = GammaKind::reciprocal();
  c.precision_gamma = GammaKind::reciprocal();
  return c;
}

const RangeSeries kReal = RangeSeries::normalize({{1, 5}, {11, 15}});
const RangeSeries kPred = RangeSeries::normalize({{2, 3}, {13, 14}, {16, 17}});

}  // namespace

TEST(ExistenceReward, Examples) {
  EXPECT_EQ(rbpr::existence_reward({1, 5}, RangeSeries::normalize({{5, 9}})), 1);
  EXPECT_EQ(rbpr::existence_reward({1, 5}, RangeSeries::normalize({{6, 9}})), 0);
  EXPECT_EQ(rbpr::existence_reward({1, 5}, RangeSeries{}), 0);
}

TEST(CardinalityFactor, Examples) {
  const auto g = GammaKind::reciprocal();
  EXPECT_EQ(rbpr::cardinality_factor({1, 10}, RangeSeries::normalize({{1, 2}}), g), 1.0);
  const auto two = RangeSeries::normalize({{1, 2}, {5, 6}});
  EXPECT_EQ(oracle::all_pairs(RangeSeries::normalize({{1, 10}}), two).size(), 2u);
  EXPECT_EQ(rbpr::cardinality_factor({1, 10}, two, g), 0.5);
  EXPECT_EQ(rbpr::cardinality_factor({1, 10}, RangeSeries::normalize({{11, 12}, {14, 15}}), g), 1.0);
}

TEST(OverlapReward, Examples) {
  const auto g = GammaKind::reciprocal();
  const auto flat = BiasKind::flat();
  const auto one = RangeSeries::normalize({{2, 3}});
  const auto two = RangeSeries::normalize({{1, 2}, {5, 6}});
  EXPECT_NEAR(rbpr::overlap_reward({1, 5}, one, g, flat),
              oracle::single_score({1, 5}, {{2, 3}}, 0.0, oracle::Gamma::reciprocal, oracle::Bias::flat),
              1e-15);
  EXPECT_NEAR(rbpr::overlap_reward({1, 5}, one, g, flat), 0.4, 1e-15);
  EXPECT_NEAR(rbpr::overlap_reward({1, 10}, two, g, flat), 0.2, 1e-15);
  for (const auto& b : {BiasKind::flat(), BiasKind::front(), BiasKind::back(), BiasKind::middle()}) {
    EXPECT_EQ(rbpr::overlap_reward({1, 5}, RangeSeries::normalize({{1, 5}}), g, b), 1.0);
  }
}

TEST(RecallSingle, Examples) {
  const auto two = RangeSeries::normalize({{1, 2}, {5, 6}});
  EXPECT_NEAR(rbpr::recall_t_single({1, 10}, two, reciprocal_flat(0.5)), 0.6, 1e-15);
  auto pure = reciprocal_flat(1.0);
  pure.recall_bias = BiasKind::middle();
  EXPECT_EQ(rbpr::recall_t_single({1, 10}, two, pure), 1.0);
  for (double a : {0.0, 0.3, 1.0}) {
    EXPECT_EQ(rbpr::recall_t_single({1, 10}, RangeSeries{}, reciprocal_flat(a)), 0.0);
  }
}

TEST(Recall, Examples) {
  EXPECT_NEAR(rbpr::recall_t(kReal, kPred, reciprocal_flat()), 0.4, 1e-15);
  EXPECT_NEAR(rbpr::recall_t(kReal, kPred, reciprocal_flat()),
              oracle::recall(kReal, kPred, 0.0, oracle::Gamma::reciprocal, oracle::Bias::flat), 1e-12);

  // two real ranges fully inside one prediction
  const auto real = RangeSeries::normalize({{10, 20}, {30, 40}});
  const auto pred = RangeSeries::normalize({{10, 40}});
  for (const auto& b : {BiasKind::flat(), BiasKind::front(), BiasKind::back(), BiasKind::middle()}) {
    auto c = reciprocal_flat();
    c.recall_bias = b;
    EXPECT_EQ(rbpr::recall_t(real, pred, c), 1.0) << b.name();
  }
  EXPECT_EQ(rbpr::recall_t(kReal, kReal, reciprocal_flat()), 1.0);
}

TEST(Recall, EmptyGroundTruthThrows) {
  EXPECT_THROW(rbpr::recall_t(RangeSeries{}, kPred, MetricConfig{}), rbpr::EmptyGroundTruth);
}

TEST(PrecisionSingle, Examples) {
  const auto cfg = reciprocal_flat();
  EXPECT_EQ(rbpr::precision_t_single({2, 3}, RangeSeries::normalize({{1, 5}}), cfg), 1.0);
  EXPECT_EQ(rbpr::precision_t_single({16, 17}, kReal, cfg), 0.0);
  EXPECT_NEAR(rbpr::precision_t_single({4, 13}, kReal, cfg), 0.25, 1e-15);
  EXPECT_NEAR(rbpr::precision_t_single({4, 13}, kReal, cfg),
              oracle::single_score({4, 13}, {{1, 5}, {11, 15}}, 0.0, oracle::Gamma::reciprocal,
                                   oracle::Bias::flat),
              1e-15);
}

TEST(Precision, Examples) {
  const auto cfg = reciprocal_flat();
  EXPECT_NEAR(rbpr::precision_t(kReal, kPred, cfg), 2.0 / 3.0, 1e-9);
  EXPECT_EQ(rbpr::precision_t(kReal, kReal, cfg), 1.0);
  EXPECT_EQ(rbpr::precision_t(RangeSeries::normalize({{1, 5}}), RangeSeries::normalize({{6, 9}}), cfg), 0.0);
  EXPECT_THROW(rbpr::precision_t(kReal, RangeSeries{}, cfg), rbpr::EmptyPrediction);
}

TEST(Precision, IgnoresAlpha) {
  auto cfg = reciprocal_flat(1.0);
  // a prediction that barely touches a real range earns no existence credit
  const auto pred = RangeSeries::normalize({{5, 9}});
  EXPECT_NEAR(rbpr::precision_t(kReal, pred, cfg), 0.2, 1e-15);
}

TEST(MetricConfig, AlphaBounds) {
  MetricConfig c;
  c.alpha = 1.5;
  EXPECT_THROW(c.validate(), rbpr::ConfigError);
  c.alpha = -0.1;
  EXPECT_THROW(c.validate(), rbpr::ConfigError);
  c.alpha = 1.0;
  EXPECT_NO_THROW(c.validate());
}
