#include <gtest/gtest.h>

#include <random>

#include "rbpr/fast_engine.hpp"
#include "rbpr/synth.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using rbpr::BiasKind;
using rbpr::GammaKind;
using rbpr::MetricConfig;
using rbpr::RangeSeries;
using rbpr::TimeRange;

namespace {

std::vector<rbpr::oracle::Pair> sweep_pairs(const rbpr::OverlapAssignment& a) {
  std::vector<rbpr::oracle::Pair> out;
  for (std::size_t i = 0; i < a.by_real.size(); ++i) {
    for (const auto& p : a.by_real[i]) out.push_back({i, p.index, p.overlap});
  }
  return out;
}

void expect_same_pairs(const std::vector<rbpr::oracle::Pair>& a,
                       const std::vector<rbpr::oracle::Pair>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].real, b[k].real);
    EXPECT_EQ(a[k].pred, b[k].pred);
    EXPECT_EQ(a[k].overlap, b[k].overlap);
  }
}

MetricConfig random_config(std::mt19937_64& rng) {
  const BiasKind kinds[] = {BiasKind::flat(), BiasKind::front(), BiasKind::back(), BiasKind::middle()};
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MetricConfig c;
  c.alpha = unit(rng);
  c.recall_bias = kinds[pick(rng)];
  c.precision_bias = kinds[pick(rng)];
  c.recall_gamma = pick(rng) % 2 ? GammaKind::one() : GammaKind::reciprocal();
  c.precision_gamma = pick(rng) % 2 ? GammaKind::one() : GammaKind::reciprocal();
  return c;
}

}  // namespace

TEST(PairedSweep, Examples) {
  const auto r = RangeSeries::normalize({{1, 5}, {11, 15}});
  const auto p = RangeSeries::normalize({{2, 3}, {13, 14}, {16, 17}});
  const auto a = rbpr::paired_sweep(r, p);
  expect_same_pairs(sweep_pairs(a), rbpr::oracle::all_pairs(r, p));
  ASSERT_EQ(a.pair_count(), 2u);
  EXPECT_EQ(a.by_real[0][0].index, 0u);
  EXPECT_EQ(a.by_real[0][0].overlap, TimeRange(2, 3));
  EXPECT_EQ(a.by_real[1][0].index, 1u);
  EXPECT_EQ(a.by_real[1][0].overlap, TimeRange(13, 14));
  EXPECT_TRUE(a.by_pred[2].empty());

  EXPECT_EQ(rbpr::paired_sweep(r, RangeSeries{}).pair_count(), 0u);

  const auto wide = RangeSeries::normalize({{1, 100}});
  const auto many = RangeSeries::normalize({{10, 20}, {30, 40}, {50, 60}});
  const auto fan = rbpr::paired_sweep(wide, many);
  EXPECT_EQ(fan.by_real[0].size(), 3u);
  expect_same_pairs(sweep_pairs(fan), rbpr::oracle::all_pairs(wide, many));
}

TEST(PairedSweep, CompleteMinimalAndLinear) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto r = rbpr::testing::random_series(rng, 300, 30, 25);
    const auto p = rbpr::testing::random_series(rng, 300, 30, 25);
    const auto a = rbpr::paired_sweep(r, p);
    expect_same_pairs(sweep_pairs(a), rbpr::oracle::all_pairs(r, p));
    EXPECT_LE(a.comparisons, r.size() + p.size());
    // every pair appears once on each side
    std::size_t pred_side = 0;
    for (std::size_t j = 0; j < a.by_pred.size(); ++j) {
      for (const auto& q : a.by_pred[j]) {
        ++pred_side;
        const auto& back = a.by_real[q.index];
        EXPECT_EQ(std::count_if(back.begin(), back.end(),
                                [&](const auto& x) { return x.index == j && x.overlap == q.overlap; }),
                  1);
      }
    }
    EXPECT_EQ(pred_side, a.pair_count());
    // union of real-side overlaps is the intersection of the two point sets
    std::set<rbpr::Timestamp> from_sweep;
    for (const auto& v : a.by_real) {
      for (const auto& q : v) {
        for (auto t = q.overlap.start(); t <= q.overlap.end(); ++t) from_sweep.insert(t);
      }
    }
    const auto rp = rbpr::oracle::points_of(r);
    const auto pp = rbpr::oracle::points_of(p);
    std::set<rbpr::Timestamp> both;
    std::set_intersection(rp.begin(), rp.end(), pp.begin(), pp.end(), std::inserter(both, both.end()));
    EXPECT_EQ(from_sweep, both);
  }
}

TEST(EvaluateFast, CoreExamplesMatchNaive) {
  MetricConfig c;
  c.recall_gamma = GammaKind::reciprocal();
  c.precision_gamma = GammaKind::reciprocal();
  const auto r = RangeSeries::normalize({{1, 5}, {11, 15}});
  const auto p = RangeSeries::normalize({{2, 3}, {13, 14}, {16, 17}});
  const auto fast = rbpr::evaluate_fast(r, p, c);
  const auto naive = rbpr::evaluate_naive(r, p, c);
  EXPECT_NEAR(fast.recall, naive.recall, 1e-9);
  EXPECT_NEAR(fast.precision, naive.precision, 1e-9);
  EXPECT_NEAR(fast.recall, 0.4, 1e-12);
  EXPECT_NEAR(fast.precision, 2.0 / 3.0, 1e-12);

  const auto same = rbpr::evaluate_fast(r, r, c);
  EXPECT_EQ(same.recall, 1.0);
  EXPECT_EQ(same.precision, 1.0);

  const auto machine = rbpr::evaluate_fast(RangeSeries::normalize({{10, 20}, {30, 40}}),
                                           RangeSeries::normalize({{10, 40}}), c);
  EXPECT_EQ(machine.recall, 1.0);
}

TEST(EvaluateFast, EmptyInputsThrow) {
  const auto r = RangeSeries::normalize({{1, 5}});
  EXPECT_THROW(rbpr::evaluate_fast(RangeSeries{}, r, MetricConfig{}), rbpr::EmptyGroundTruth);
  EXPECT_THROW(rbpr::evaluate_fast(r, RangeSeries{}, MetricConfig{}), rbpr::EmptyPrediction);
}

TEST(EvaluateFast, RandomDifferential) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = rbpr::testing::non_empty_series(rng, 2000, 60, 80);
    const auto p = rbpr::testing::non_empty_series(rng, 2000, 60, 80);
    const auto cfg = random_config(rng);
    const auto fast = rbpr::evaluate_fast(r, p, cfg);
    const auto naive = rbpr::evaluate_naive(r, p, cfg);
    ASSERT_NEAR(fast.recall, naive.recall, 1e-9);
    ASSERT_NEAR(fast.precision, naive.precision, 1e-9);
  }
}

TEST(EvaluateFast, CustomBiasFallsBack) {
  MetricConfig c;
  c.recall_bias = BiasKind::custom([](std::int64_t i, std::int64_t L) { return 1.0 + double(i) / double(L); });
  c.precision_bias = c.recall_bias;
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = rbpr::testing::non_empty_series(rng, 500, 20, 30);
    const auto p = rbpr::testing::non_empty_series(rng, 500, 20, 30);
    const auto fast = rbpr::evaluate_fast(r, p, c);
    const auto naive = rbpr::evaluate_naive(r, p, c);
    ASSERT_NEAR(fast.recall, naive.recall, 1e-9);
    ASSERT_NEAR(fast.precision, naive.precision, 1e-9);
  }
}

TEST(EvaluateFast, LargeRandomInstance) {
  rbpr::synth::ScenarioSpec spec;
  spec.domain = 50'000;
  spec.n_real = 10'000;
  spec.n_pred = 10'000;
  spec.min_len = 1;
  spec.max_len = 3;
  spec.seed = 2024;
  const auto s = rbpr::synth::gen_random(spec);
  ASSERT_EQ(s.real.size(), 10'000u);
  ASSERT_EQ(s.pred.size(), 10'000u);
  MetricConfig c;
  c.recall_bias = BiasKind::front();
  c.recall_gamma = GammaKind::reciprocal();
  c.precision_bias = BiasKind::middle();
  c.alpha = 0.25;
  const auto fast = rbpr::evaluate_fast(s.real, s.pred, c);
  const auto naive = rbpr::evaluate_naive(s.real, s.pred, c);
  EXPECT_NEAR(fast.recall, naive.recall, 1e-9);
  EXPECT_NEAR(fast.precision, naive.precision, 1e-9);
}

TEST(EvaluatePartial, UndefinedSidesAreEmpty) {
  const auto r = RangeSeries::normalize({{1, 5}});
  const auto none = rbpr::evaluate_partial(rbpr::Engine::fast, r, RangeSeries{}, MetricConfig{});
  EXPECT_EQ(*none.recall, 0.0);
  EXPECT_FALSE(none.precision.has_value());
  const auto no_truth = rbpr::evaluate_partial(rbpr::Engine::naive, RangeSeries{}, r, MetricConfig{});
  EXPECT_FALSE(no_truth.recall.has_value());
  EXPECT_EQ(*no_truth.precision, 0.0);
}
