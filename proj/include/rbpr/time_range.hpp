#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rbpr/errors.hpp"

namespace rbpr {

using Timestamp = std::int64_t;

/// Closed interval [start, end] of integer timestamps.
class TimeRange {
 public:
  constexpr TimeRange(Timestamp start, Timestamp end) : start_(start), end_(end) {
    if (start < 0) throw InvalidRange("negative timestamp " + std::to_string(start));
    if (start > end) {
      throw InvalidRange("range start " + std::to_string(start) + " exceeds end " +
                         std::to_string(end));
    }
  }

  static constexpr TimeRange unit(Timestamp t) { return TimeRange(t, t); }

  constexpr Timestamp start() const noexcept { return start_; }
  constexpr Timestamp end() const noexcept { return end_; }
  constexpr std::int64_t length() const noexcept { return end_ - start_ + 1; }
  constexpr bool contains(Timestamp t) const noexcept { return start_ <= t && t <= end_; }
  constexpr bool contains(const TimeRange& other) const noexcept {
    return start_ <= other.start_ && other.end_ <= end_;
  }

  /// 1-based position of `t` inside this range.
  constexpr std::int64_t position_of(Timestamp t) const noexcept { return t - start_ + 1; }

  constexpr auto operator<=>(const TimeRange&) const = default;

 private:
  Timestamp start_;
  Timestamp end_;
};

/// Intersection of two ranges; adjacency is not overlap.
constexpr std::optional<TimeRange> overlap(const TimeRange& a, const TimeRange& b) {
  const Timestamp lo = std::max(a.start(), b.start());
  const Timestamp hi = std::min(a.end(), b.end());
  if (lo > hi) return std::nullopt;
  return TimeRange(lo, hi);
}

constexpr bool overlaps(const TimeRange& a, const TimeRange& b) noexcept {
  return a.start() <= b.end() && b.start() <= a.end();
}

/// Ordered, pairwise disjoint set of ranges.
///
/// `normalize` is the usual entry point: it sorts and merges overlapping and
/// adjacent ranges, so consecutive ranges are separated by at least one
/// uncovered timestamp. `from_disjoint` keeps adjacent ranges apart, which is
/// how a point set is expressed as unit-size ranges.
class RangeSeries {
 public:
  RangeSeries() = default;

  static RangeSeries normalize(std::vector<TimeRange> ranges) {
    RangeSeries out;
    out.input_count_ = ranges.size();
    std::sort(ranges.begin(), ranges.end());
    for (const auto& r : ranges) {
      if (!out.ranges_.empty() && r.start() <= out.ranges_.back().end() + 1) {
        auto& last = out.ranges_.back();
        last = TimeRange(last.start(), std::max(last.end(), r.end()));
      } else {
        out.ranges_.push_back(r);
      }
    }
    return out;
  }

  /// Accepts ranges that are already ascending and pairwise disjoint.
  /// Adjacent ranges stay separate. Throws InvalidRange otherwise.
  static RangeSeries from_disjoint(std::vector<TimeRange> ranges) {
    for (std::size_t k = 1; k < ranges.size(); ++k) {
      if (ranges[k].start() <= ranges[k - 1].end()) {
        throw InvalidRange("ranges must be ascending and pairwise disjoint");
      }
    }
    RangeSeries out;
    out.input_count_ = ranges.size();
    out.ranges_ = std::move(ranges);
    return out;
  }

  std::span<const TimeRange> ranges() const noexcept { return ranges_; }
  std::size_t size() const noexcept { return ranges_.size(); }
  bool empty() const noexcept { return ranges_.empty(); }
  const TimeRange& operator[](std::size_t k) const { return ranges_[k]; }
  auto begin() const noexcept { return ranges_.begin(); }
  auto end() const noexcept { return ranges_.end(); }

  /// Number of ranges handed to the factory, before any merging.
  std::size_t input_count() const noexcept { return input_count_; }

  /// True when no two consecutive ranges are adjacent.
  bool is_separated() const noexcept {
    for (std::size_t k = 1; k < ranges_.size(); ++k) {
      if (ranges_[k].start() <= ranges_[k - 1].end() + 1) return false;
    }
    return true;
  }

  std::int64_t covered_points() const noexcept {
    std::int64_t n = 0;
    for (const auto& r : ranges_) n += r.length();
    return n;
  }

  friend bool operator==(const RangeSeries& a, const RangeSeries& b) {
    return a.ranges_ == b.ranges_;
  }

 private:
  std::vector<TimeRange> ranges_;
  std::size_t input_count_ = 0;
};

/// Total number of time points in a series; valid timestamps are [0, n_points).
struct TimeDomain {
  std::int64_t n_points = 1;

  bool contains(const TimeRange& r) const noexcept { return r.end() < n_points; }
  bool contains(const RangeSeries& s) const noexcept {
    return s.empty() || contains(s.ranges().back());
  }

  friend bool operator==(const TimeDomain&, const TimeDomain&) = default;
};

}  // namespace rbpr
