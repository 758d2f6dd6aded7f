#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "rbpr/errors.hpp"
#include "rbpr/time_range.hpp"

namespace rbpr {

/// Point-level confusion counts.
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// One unit-size range per covered point, in order.
inline std::vector<TimeRange> to_unit_ranges(const RangeSeries& s) {
  std::vector<TimeRange> out;
  out.reserve(static_cast<std::size_t>(s.covered_points()));
  for (const auto& r : s) {
    for (Timestamp t = r.start(); t <= r.end(); ++t) out.push_back(TimeRange::unit(t));
  }
  return out;
}

/// Counts by interval arithmetic: tp is the total intersection length.
inline ConfusionCounts classical_counts(const RangeSeries& real, const RangeSeries& pred) {
  std::int64_t tp = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < real.size() && j < pred.size()) {
    if (const auto o = overlap(real[i], pred[j])) tp += o->length();
    if (real[i].end() < pred[j].end()) {
      ++i;
    } else {
      ++j;
    }
  }
  return {tp, pred.covered_points() - tp, real.covered_points() - tp};
}

/// Counts by marking every covered point; linear in the largest timestamp.
inline ConfusionCounts classical_counts_by_points(const RangeSeries& real,
                                                  const RangeSeries& pred) {
  Timestamp last = -1;
  if (!real.empty()) last = std::max(last, real.ranges().back().end());
  if (!pred.empty()) last = std::max(last, pred.ranges().back().end());
  std::vector<std::uint8_t> is_real(static_cast<std::size_t>(last + 1), 0);
  for (const auto& r : real) {
    std::fill(is_real.begin() + r.start(), is_real.begin() + r.end() + 1, 1);
  }
  ConfusionCounts c;
  for (const auto& p : pred) {
    for (Timestamp t = p.start(); t <= p.end(); ++t) {
      if (is_real[static_cast<std::size_t>(t)]) {
        ++c.tp;
      } else {
        ++c.fp;
      }
    }
  }
  c.fn = real.covered_points() - c.tp;
  return c;
}

inline double classical_precision(const ConfusionCounts& c) {
  if (c.tp + c.fp == 0) throw ZeroDenominator(ZeroDenominator::Metric::precision);
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
}

inline double classical_recall(const ConfusionCounts& c) {
  if (c.tp + c.fn == 0) throw ZeroDenominator(ZeroDenominator::Metric::recall);
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

/// Precision and recall; a metric whose denominator is zero is left empty.
struct ClassicalScores {
  std::optional<double> precision;
  std::optional<double> recall;
};

inline ClassicalScores classical_precision_recall(const ConfusionCounts& c) {
  ClassicalScores s;
  if (c.tp + c.fp != 0) s.precision = classical_precision(c);
  if (c.tp + c.fn != 0) s.recall = classical_recall(c);
  return s;
}

/// Weighted harmonic mean; beta is the importance of recall relative to
/// precision. Zero when both inputs are zero.
inline double f_beta(double precision, double recall, double beta) {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (precision == 0.0 && recall == 0.0) return 0.0;
  const double b2 = beta * beta;
  return (1.0 + b2) * precision * recall / (b2 * precision + recall);
}

}  // namespace rbpr
