#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rbpr/bias.hpp"
#include "rbpr/errors.hpp"
#include "rbpr/model.hpp"
#include "rbpr/time_range.hpp"

namespace rbpr {

struct OverlapPair {
  std::size_t index;  // index into the opposite series
  TimeRange overlap;

  friend bool operator==(const OverlapPair&, const OverlapPair&) = default;
};

/// One non-empty intersection between real[real_index] and pred[pred_index].
struct IndexedOverlap {
  std::size_t real_index;
  std::size_t pred_index;
  TimeRange overlap;
};

/// Simultaneous sweep over both series ordered by start. The cursor whose
/// range ends first is retired after each comparison, so the loop runs at
/// most size(real) + size(pred) - 1 times. Both indices are nondecreasing
/// in the result, so it is grouped by real and by predicted range at once.
inline std::vector<IndexedOverlap> sweep_overlaps(const RangeSeries& real, const RangeSeries& pred,
                                                  std::size_t* comparisons = nullptr) {
  std::vector<IndexedOverlap> out;
  out.reserve(real.size() + pred.size());
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t steps = 0;
  while (i < real.size() && j < pred.size()) {
    ++steps;
    const Timestamp lo = std::max(real[i].start(), pred[j].start());
    const Timestamp re = real[i].end();
    const Timestamp pe = pred[j].end();
    const Timestamp hi = std::min(re, pe);
    if (lo <= hi) out.push_back({i, j, TimeRange(lo, hi)});
    i += re <= pe;
    j += pe <= re;
  }
  if (comparisons) *comparisons = steps;
  return out;
}

/// Every non-empty intersection between a real and a predicted range,
/// indexed from both sides.
struct OverlapAssignment {
  std::vector<std::vector<OverlapPair>> by_real;
  std::vector<std::vector<OverlapPair>> by_pred;
  std::size_t comparisons = 0;

  std::size_t pair_count() const {
    std::size_t n = 0;
    for (const auto& v : by_real) n += v.size();
    return n;
  }
};

inline OverlapAssignment paired_sweep(const RangeSeries& real, const RangeSeries& pred) {
  OverlapAssignment a;
  a.by_real.resize(real.size());
  a.by_pred.resize(pred.size());
  for (const auto& o : sweep_overlaps(real, pred, &a.comparisons)) {
    a.by_real[o.real_index].push_back({o.pred_index, o.overlap});
    a.by_pred[o.pred_index].push_back({o.real_index, o.overlap});
  }
  return a;
}

namespace detail {

/// Running score for one side of the sweep. Parts of the current target
/// arrive in order; close() folds the target into the total.
class SideAccumulator {
 public:
  SideAccumulator(const GammaKind& g, const BiasKind& bias, double alpha)
      : gamma_(g), bias_(bias), builtin_(bias.is_builtin()), alpha_(alpha) {}

  void add(const TimeRange& target, Timestamp lo, Timestamp hi) {
    ++count_;
    if (builtin_) {
      covered_ += builtin_segment_sum(bias_.shape(), lo - target.start() + 1,
                                      hi - target.start() + 1, target.length());
    } else {
      omega_ += omega(target, TimeRange(lo, hi), bias_);
    }
  }

  void close(const TimeRange& target) {
    if (count_ == 0) return;
    const double omega_sum =
        builtin_ ? static_cast<double>(covered_) /
                       static_cast<double>(builtin_total(bias_.shape(), target.length()))
                 : omega_;
    sum_ += alpha_ * 1.0 + (1.0 - alpha_) * (cardinality_factor(count_, gamma_) * omega_sum);
    count_ = 0;
    covered_ = 0;
    omega_ = 0.0;
  }

  double mean(std::size_t n_targets) const { return sum_ / static_cast<double>(n_targets); }

 private:
  const GammaKind& gamma_;
  const BiasKind& bias_;
  bool builtin_;
  double alpha_;
  std::size_t count_ = 0;
  std::int64_t covered_ = 0;
  double omega_ = 0.0;
  double sum_ = 0.0;
};

}  // namespace detail

/// Recall and precision from one sweep plus closed-form bias sums, scored
/// as the sweep goes. Agrees with evaluate_naive to within floating-point
/// summation order.
inline RangeScores evaluate_fast(const RangeSeries& real, const RangeSeries& pred,
                                 const MetricConfig& cfg) {
  if (real.empty()) throw EmptyGroundTruth();
  if (pred.empty()) throw EmptyPrediction();
  detail::SideAccumulator recall(cfg.recall_gamma, cfg.recall_bias, cfg.alpha);
  detail::SideAccumulator precision(cfg.precision_gamma, cfg.precision_bias, 0.0);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < real.size() && j < pred.size()) {
    const TimeRange& r = real[i];
    const TimeRange& p = pred[j];
    const Timestamp lo = std::max(r.start(), p.start());
    const Timestamp hi = std::min(r.end(), p.end());
    if (lo <= hi) {
      recall.add(r, lo, hi);
      precision.add(p, lo, hi);
    }
    if (r.end() <= p.end()) recall.close(real[i++]);
    if (p.end() <= r.end()) precision.close(pred[j++]);
  }
  if (i < real.size()) recall.close(real[i]);
  if (j < pred.size()) precision.close(pred[j]);
  return {recall.mean(real.size()), precision.mean(pred.size())};
}

enum class Engine { naive, fast };

inline std::string_view to_string(Engine e) { return e == Engine::naive ? "naive" : "fast"; }

inline std::optional<Engine> engine_from_string(std::string_view s) {
  if (s == "naive") return Engine::naive;
  if (s == "fast") return Engine::fast;
  return std::nullopt;
}

inline RangeScores evaluate(Engine engine, const RangeSeries& real, const RangeSeries& pred,
                            const MetricConfig& cfg) {
  return engine == Engine::naive ? evaluate_naive(real, pred, cfg)
                                 : evaluate_fast(real, pred, cfg);
}

/// Scores with undefined metrics left empty instead of throwing.
struct PartialScores {
  std::optional<double> recall;
  std::optional<double> precision;
};

inline PartialScores evaluate_partial(Engine engine, const RangeSeries& real,
                                      const RangeSeries& pred, const MetricConfig& cfg) {
  if (!real.empty() && !pred.empty()) {
    const auto s = evaluate(engine, real, pred, cfg);
    return {s.recall, s.precision};
  }
  // one side is empty, so nothing overlaps
  PartialScores s;
  if (!real.empty()) s.recall = recall_t(real, pred, cfg);
  if (!pred.empty()) s.precision = precision_t(real, pred, cfg);
  return s;
}

}  // namespace rbpr
