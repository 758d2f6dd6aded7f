#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rbpr/bias.hpp"
#include "rbpr/errors.hpp"
#include "rbpr/time_range.hpp"

// Reference implementation of range-based recall and precision. Every real
// range is compared against every predicted range; see fast_engine.hpp for
// the sweep-based evaluator that must agree with this one.

namespace rbpr {

/// Tunable pieces of the model. Alpha applies to recall only: precision has
/// no existence term.
struct MetricConfig {
  double alpha = 0.0;
  GammaKind recall_gamma = GammaKind::one();
  BiasKind recall_bias = BiasKind::flat();
  GammaKind precision_gamma = GammaKind::one();
  BiasKind precision_bias = BiasKind::flat();

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw ConfigError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
  }

  /// Config under which recall of (P, R) computes precision of (R, P).
  MetricConfig precision_as_recall() const {
    MetricConfig c;
    c.alpha = 0.0;
    c.recall_gamma = precision_gamma;
    c.recall_bias = precision_bias;
    c.precision_gamma = precision_gamma;
    c.precision_bias = precision_bias;
    return c;
  }
};

/// 1 when `target` shares at least one point with some range of `others`.
inline int existence_reward(const TimeRange& target, const RangeSeries& others) {
  for (const auto& o : others) {
    if (overlaps(target, o)) return 1;
  }
  return 0;
}

inline std::size_t count_overlapping(const TimeRange& target, const RangeSeries& others) {
  std::size_t x = 0;
  for (const auto& o : others) {
    if (overlaps(target, o)) ++x;
  }
  return x;
}

/// 1 when `target` overlaps at most one range of `others`, gamma(x) otherwise.
inline double cardinality_factor(const TimeRange& target, const RangeSeries& others,
                                 const GammaKind& g) {
  const std::size_t x = count_overlapping(target, others);
  return x <= 1 ? 1.0 : gamma(g, x);
}

inline double cardinality_factor(std::size_t overlapping, const GammaKind& g) {
  return overlapping <= 1 ? 1.0 : gamma(g, overlapping);
}

inline double overlap_reward(const TimeRange& target, const RangeSeries& others,
                             const GammaKind& g, const BiasKind& bias) {
  std::size_t x = 0;
  double sum = 0.0;
  for (const auto& o : others) {
    if (const auto part = overlap(target, o)) {
      ++x;
      sum += omega(target, *part, bias);
    }
  }
  return cardinality_factor(x, g) * sum;
}

inline double recall_t_single(const TimeRange& real, const RangeSeries& pred,
                              const MetricConfig& cfg) {
  const double existence = existence_reward(real, pred);
  const double overlap_part = overlap_reward(real, pred, cfg.recall_gamma, cfg.recall_bias);
  return cfg.alpha * existence + (1.0 - cfg.alpha) * overlap_part;
}

/// Mean of recall_t_single over the real ranges. Throws EmptyGroundTruth
/// when `real` is empty.
inline double recall_t(const RangeSeries& real, const RangeSeries& pred,
                       const MetricConfig& cfg) {
  if (real.empty()) throw EmptyGroundTruth();
  double sum = 0.0;
  for (const auto& r : real) sum += recall_t_single(r, pred, cfg);
  return sum / static_cast<double>(real.size());
}

inline double precision_t_single(const TimeRange& pred, const RangeSeries& real,
                                 const MetricConfig& cfg) {
  return overlap_reward(pred, real, cfg.precision_gamma, cfg.precision_bias);
}

/// Mean of precision_t_single over the predicted ranges. Throws
/// EmptyPrediction when `pred` is empty.
inline double precision_t(const RangeSeries& real, const RangeSeries& pred,
                          const MetricConfig& cfg) {
  if (pred.empty()) throw EmptyPrediction();
  double sum = 0.0;
  for (const auto& p : pred) sum += precision_t_single(p, real, cfg);
  return sum / static_cast<double>(pred.size());
}

struct RangeScores {
  double recall = 0.0;
  double precision = 0.0;
};

inline RangeScores evaluate_naive(const RangeSeries& real, const RangeSeries& pred,
                                  const MetricConfig& cfg) {
  return {recall_t(real, pred, cfg), precision_t(real, pred, cfg)};
}

}  // namespace rbpr
