#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbpr/errors.hpp"
#include "rbpr/time_range.hpp"

namespace rbpr {

enum class BiasShape { flat, front, back, middle, custom };

inline std::string_view to_string(BiasShape s) {
  switch (s) {
    case BiasShape::flat: return "flat";
    case BiasShape::front: return "front";
    case BiasShape::back: return "back";
    case BiasShape::middle: return "middle";
    case BiasShape::custom: return "custom";
  }
  return "unknown";
}

/// Weight of the 1-based position `i` in a range of length `length` for a
/// built-in shape. Every built-in weight is a positive integer.
constexpr std::int64_t builtin_weight(BiasShape shape, std::int64_t i, std::int64_t length) {
  switch (shape) {
    case BiasShape::front: return length - i + 1;
    case BiasShape::back: return i;
    // i <= length / 2, compared without rounding
    case BiasShape::middle: return 2 * i <= length ? i : length - i + 1;
    default: return 1;
  }
}

/// Positional bias: how much each position of a range is worth.
///
/// Custom weight functions are invoked concurrently when evaluations run in
/// parallel; the provider must make them thread-safe.
class BiasKind {
 public:
  using WeightFn = std::function<double(std::int64_t i, std::int64_t length)>;

  /// Largest range length probed when a custom function is constructed.
  static constexpr std::int64_t kProbeLength = 32;

  BiasKind() = default;

  static BiasKind flat() { return BiasKind(BiasShape::flat); }
  static BiasKind front() { return BiasKind(BiasShape::front); }
  static BiasKind back() { return BiasKind(BiasShape::back); }
  static BiasKind middle() { return BiasKind(BiasShape::middle); }

  static BiasKind builtin(BiasShape shape) {
    if (shape == BiasShape::custom) throw BiasError("custom bias needs a weight function");
    return BiasKind(shape);
  }

  /// Wraps a user weight function. The function is probed on every position
  /// of every length up to kProbeLength and must return a positive value.
  static BiasKind custom(WeightFn fn, std::string name = "custom") {
    if (!fn) throw BiasError("custom bias: empty weight function");
    for (std::int64_t len = 1; len <= kProbeLength; ++len) {
      for (std::int64_t i = 1; i <= len; ++i) {
        if (!(fn(i, len) > 0.0)) {
          throw BiasError("custom bias '" + name + "' returned a non-positive weight at i=" +
                          std::to_string(i) + ", length=" + std::to_string(len));
        }
      }
    }
    BiasKind k(BiasShape::custom);
    k.fn_ = std::make_shared<const WeightFn>(std::move(fn));
    k.name_ = std::move(name);
    return k;
  }

  BiasShape shape() const noexcept { return shape_; }
  bool is_builtin() const noexcept { return shape_ != BiasShape::custom; }
  std::string name() const { return is_builtin() ? std::string(to_string(shape_)) : name_; }

  /// Unchecked weight; callers guarantee 1 <= i <= length.
  double weight(std::int64_t i, std::int64_t length) const {
    if (is_builtin()) return static_cast<double>(builtin_weight(shape_, i, length));
    const double w = (*fn_)(i, length);
    if (!(w > 0.0)) {
      throw BiasError("custom bias '" + name_ + "' returned a non-positive weight at i=" +
                      std::to_string(i) + ", length=" + std::to_string(length));
    }
    return w;
  }

 private:
  explicit BiasKind(BiasShape shape) : shape_(shape) {}

  BiasShape shape_ = BiasShape::flat;
  std::shared_ptr<const WeightFn> fn_;
  std::string name_;
};

/// delta(i, L) for 1 <= i <= L.
inline double delta(const BiasKind& kind, std::int64_t i, std::int64_t length) {
  if (length < 1 || i < 1 || i > length) {
    throw BiasError("position " + std::to_string(i) + " outside range of length " +
                    std::to_string(length));
  }
  return kind.weight(i, length);
}

namespace detail {

inline void check_parts(const TimeRange& range, std::span<const TimeRange> parts) {
  for (const auto& p : parts) {
    if (!range.contains(p)) throw BiasError("overlap part lies outside its anomaly range");
  }
  if (parts.size() < 2) return;
  std::vector<TimeRange> sorted(parts.begin(), parts.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k].start() <= sorted[k - 1].end()) {
      throw BiasError("overlap parts must be pairwise disjoint");
    }
  }
}

/// Sum of built-in weights over positions [a, b] (1-based, a <= b) of a range
/// of length L, by arithmetic series.
constexpr std::int64_t builtin_segment_sum(BiasShape shape, std::int64_t a, std::int64_t b,
                                           std::int64_t length) {
  const std::int64_t count = b - a + 1;
  switch (shape) {
    case BiasShape::front: return count * (2 * length + 2 - a - b) / 2;
    case BiasShape::back: return (a + b) * count / 2;
    case BiasShape::middle: {
      // positions 1..half weigh i, the rest weigh L - i + 1
      const std::int64_t half = length / 2;
      std::int64_t sum = 0;
      if (a <= half) sum += builtin_segment_sum(BiasShape::back, a, std::min(b, half), length);
      if (b > half) {
        sum += builtin_segment_sum(BiasShape::front, std::max(a, half + 1), b, length);
      }
      return sum;
    }
    default: return count;
  }
}

constexpr std::int64_t builtin_total(BiasShape shape, std::int64_t length) {
  return builtin_segment_sum(shape, 1, length, length);
}

}  // namespace detail

/// Overlap size function: weighted fraction of `range` covered by `parts`.
///
/// Walks every position of the range, adding its weight to the maximum and,
/// when the position is covered by one of the parts, to the achieved value.
inline double omega(const TimeRange& range, std::span<const TimeRange> parts,
                    const BiasKind& kind) {
  detail::check_parts(range, parts);
  const std::int64_t length = range.length();
  double my_value = 0.0;
  double max_value = 0.0;
  for (std::int64_t i = 1; i <= length; ++i) {
    const double bias = kind.weight(i, length);
    max_value += bias;
    const Timestamp t = range.start() + i - 1;
    if (std::any_of(parts.begin(), parts.end(),
                    [t](const TimeRange& p) { return p.contains(t); })) {
      my_value += bias;
    }
  }
  return my_value / max_value;
}

inline double omega(const TimeRange& range, const TimeRange& part, const BiasKind& kind) {
  return omega(range, std::span<const TimeRange>(&part, 1), kind);
}

/// Same value as omega(), with O(1) work per part for built-in shapes.
/// Custom shapes fall back to the positional loop.
inline double omega_closed_form(const TimeRange& range, std::span<const TimeRange> parts,
                                const BiasKind& kind) {
  if (!kind.is_builtin()) return omega(range, parts, kind);
  detail::check_parts(range, parts);
  const std::int64_t length = range.length();
  std::int64_t covered = 0;
  for (const auto& p : parts) {
    covered += detail::builtin_segment_sum(kind.shape(), range.position_of(p.start()),
                                           range.position_of(p.end()), length);
  }
  return static_cast<double>(covered) /
         static_cast<double>(detail::builtin_total(kind.shape(), length));
}

inline double omega_closed_form(const TimeRange& range, const TimeRange& part,
                                const BiasKind& kind) {
  return omega_closed_form(range, std::span<const TimeRange>(&part, 1), kind);
}

/// Cardinality function gamma(x), applied when a range overlaps x >= 2 others.
///
/// Custom values outside [0, 1] are clamped; each clamp is counted so the
/// report layer can surface a warning.
class GammaKind {
 public:
  enum class Shape { one, reciprocal, custom };
  using Fn = std::function<double(std::size_t x)>;

  GammaKind() = default;

  static GammaKind one() { return GammaKind(Shape::one); }
  static GammaKind reciprocal() { return GammaKind(Shape::reciprocal); }
  static GammaKind custom(Fn fn, std::string name = "custom") {
    if (!fn) throw BiasError("custom gamma: empty function");
    GammaKind g(Shape::custom);
    g.state_ = std::make_shared<Custom>(std::move(fn), std::move(name));
    return g;
  }

  Shape shape() const noexcept { return shape_; }
  std::string name() const {
    switch (shape_) {
      case Shape::one: return "one";
      case Shape::reciprocal: return "reciprocal";
      case Shape::custom: return state_->name;
    }
    return "unknown";
  }

  double operator()(std::size_t x) const {
    switch (shape_) {
      case Shape::one: return 1.0;
      case Shape::reciprocal: return 1.0 / static_cast<double>(x);
      case Shape::custom: {
        const double v = state_->fn(x);
        if (v >= 0.0 && v <= 1.0) return v;
        state_->clamps.fetch_add(1, std::memory_order_relaxed);
        return v > 1.0 ? 1.0 : 0.0;  // NaN lands on 0
      }
    }
    return 1.0;
  }

  /// How many custom values have been clamped into [0, 1] so far.
  std::size_t clamp_count() const noexcept {
    return state_ ? state_->clamps.load(std::memory_order_relaxed) : 0;
  }

 private:
  struct Custom {
    Custom(Fn f, std::string n) : fn(std::move(f)), name(std::move(n)) {}
    Fn fn;
    std::string name;
    std::atomic<std::size_t> clamps{0};
  };

  explicit GammaKind(Shape shape) : shape_(shape) {}

  Shape shape_ = Shape::one;
  std::shared_ptr<Custom> state_;
};

inline double gamma(const GammaKind& kind, std::size_t x) { return kind(x); }

}  // namespace rbpr
