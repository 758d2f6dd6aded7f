#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rbpr/classical.hpp"
#include "rbpr/errors.hpp"
#include "rbpr/fast_engine.hpp"
#include "rbpr/model.hpp"
#include "rbpr/time_range.hpp"

// Seeded scenario generators and the naive-vs-fast cost harness.
//
// Generated series keep at least one uncovered timestamp between consecutive
// ranges, so normalizing them never merges anything.

namespace rbpr::synth {

enum class Placement { random, front_aligned, back_aligned, fragmented };

struct ScenarioSpec {
  std::int64_t domain = 50'000;
  std::size_t n_real = 100;
  std::size_t n_pred = 100;  // used by Placement::random only
  std::int64_t min_len = 1;
  std::int64_t max_len = 10;
  Placement placement = Placement::random;
  double fraction = 1.0;     // front_aligned / back_aligned
  std::size_t pieces = 2;    // fragmented
  std::uint64_t seed = 42;
};

struct Scenario {
  RangeSeries real;
  RangeSeries pred;
  TimeDomain domain;
};

namespace detail {

inline void check_fits(std::int64_t domain, std::size_t n, std::int64_t min_len,
                       std::int64_t max_len) {
  if (domain < 1) throw InfeasibleSpec("domain must contain at least one point");
  if (min_len < 1 || min_len > max_len) {
    throw InfeasibleSpec("length bounds must satisfy 1 <= min_len <= max_len");
  }
  if (n == 0) return;
  const auto count = static_cast<std::int64_t>(n);
  // worst case: every range at max_len plus one-point gaps
  if (count > domain || max_len > domain || count * (max_len + 1) - 1 > domain) {
    throw InfeasibleSpec(std::to_string(n) + " ranges of length up to " +
                         std::to_string(max_len) + " do not fit in " + std::to_string(domain) +
                         " points");
  }
}

/// Places `n` ranges with uniform lengths in [min_len, max_len]. The free
/// space left after reserving lengths and one-point gaps is split by n sorted
/// uniform cut points, which samples placements uniformly.
inline std::vector<TimeRange> place_ranges(std::int64_t domain, std::size_t n,
                                           std::int64_t min_len, std::int64_t max_len,
                                           std::mt19937_64& rng) {
  check_fits(domain, n, min_len, max_len);
  std::vector<std::int64_t> lengths(n);
  std::uniform_int_distribution<std::int64_t> len_dist(min_len, max_len);
  std::int64_t used = n == 0 ? 0 : static_cast<std::int64_t>(n) - 1;
  for (auto& l : lengths) {
    l = len_dist(rng);
    used += l;
  }
  const std::int64_t slack = domain - used;
  std::vector<std::int64_t> cuts(n);
  std::uniform_int_distribution<std::int64_t> cut_dist(0, slack);
  for (auto& c : cuts) c = cut_dist(rng);
  std::sort(cuts.begin(), cuts.end());

  std::vector<TimeRange> out;
  out.reserve(n);
  std::int64_t prefix = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t start = cuts[k] + prefix;
    out.emplace_back(start, start + lengths[k] - 1);
    prefix += lengths[k] + 1;
  }
  return out;
}

}  // namespace detail

/// ceil(f * length), tolerant of f * length landing a rounding error above
/// an integer; always in [1, length].
inline std::int64_t covered_prefix(double fraction, std::int64_t length) {
  const double x = fraction * static_cast<double>(length);
  auto m = static_cast<std::int64_t>(std::ceil(x));
  if (static_cast<double>(m) - x > 1.0 - 1e-9) --m;
  return std::clamp<std::int64_t>(m, 1, length);
}

inline RangeSeries front_aligned(const RangeSeries& real, double fraction) {
  std::vector<TimeRange> out;
  for (const auto& r : real) {
    out.emplace_back(r.start(), r.start() + covered_prefix(fraction, r.length()) - 1);
  }
  return RangeSeries::normalize(std::move(out));
}

inline RangeSeries back_aligned(const RangeSeries& real, double fraction) {
  std::vector<TimeRange> out;
  for (const auto& r : real) {
    out.emplace_back(r.end() - covered_prefix(fraction, r.length()) + 1, r.end());
  }
  return RangeSeries::normalize(std::move(out));
}

/// Splits every range into up to `pieces` parts separated by one uncovered
/// point. Ranges too short for that many parts get as many as fit.
inline RangeSeries fragmented(const RangeSeries& real, std::size_t pieces) {
  if (pieces == 0) throw InfeasibleSpec("fragmented placement needs at least one piece");
  std::vector<TimeRange> out;
  for (const auto& r : real) {
    const auto k = std::min<std::int64_t>(static_cast<std::int64_t>(pieces), (r.length() + 1) / 2);
    const std::int64_t covered = r.length() - (k - 1);
    const std::int64_t base = covered / k;
    const std::int64_t extra = covered % k;
    Timestamp t = r.start();
    for (std::int64_t p = 0; p < k; ++p) {
      const std::int64_t len = base + (p < extra ? 1 : 0);
      out.emplace_back(t, t + len - 1);
      t += len + 1;
    }
  }
  return RangeSeries::normalize(std::move(out));
}

/// Reflects every timestamp t to n_points - 1 - t.
inline RangeSeries mirror(const RangeSeries& s, TimeDomain domain) {
  std::vector<TimeRange> out;
  out.reserve(s.size());
  for (auto it = s.ranges().rbegin(); it != s.ranges().rend(); ++it) {
    out.emplace_back(domain.n_points - 1 - it->end(), domain.n_points - 1 - it->start());
  }
  return RangeSeries::normalize(std::move(out));
}

inline Scenario gen_random(const ScenarioSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  Scenario s;
  s.domain = TimeDomain{spec.domain};
  s.real = RangeSeries::normalize(
      detail::place_ranges(spec.domain, spec.n_real, spec.min_len, spec.max_len, rng));
  switch (spec.placement) {
    case Placement::random:
      s.pred = RangeSeries::normalize(
          detail::place_ranges(spec.domain, spec.n_pred, spec.min_len, spec.max_len, rng));
      break;
    case Placement::front_aligned:
    case Placement::back_aligned:
      if (!(spec.fraction > 0.0 && spec.fraction <= 1.0)) {
        throw InfeasibleSpec("coverage fraction must lie in (0, 1]");
      }
      s.pred = spec.placement == Placement::front_aligned ? front_aligned(s.real, spec.fraction)
                                                          : back_aligned(s.real, spec.fraction);
      break;
    case Placement::fragmented:
      s.pred = fragmented(s.real, spec.pieces);
      break;
  }
  return s;
}

struct PositionalPair {
  RangeSeries real;
  RangeSeries front_pred;
  RangeSeries back_pred;
  TimeDomain domain;
};

inline PositionalPair gen_positional_pair(const RangeSeries& real, TimeDomain domain,
                                          double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InfeasibleSpec("coverage fraction must lie in (0, 1]");
  }
  return {real, front_aligned(real, fraction), back_aligned(real, fraction), domain};
}

/// Real ranges drawn from `base`; predictions cover the first (front) or
/// last (back) ceil(f * length) points of every real range.
inline PositionalPair gen_positional_pair(const ScenarioSpec& base, double fraction) {
  std::mt19937_64 rng(base.seed);
  auto real = RangeSeries::normalize(
      detail::place_ranges(base.domain, base.n_real, base.min_len, base.max_len, rng));
  return gen_positional_pair(real, TimeDomain{base.domain}, fraction);
}

struct BenchOptions {
  std::int64_t domain = 50'000;
  std::int64_t min_len = 1;
  std::int64_t max_len = 3;
  int samples = 5;
  double min_sample_ms = 20.0;
  bool include_classical = false;
  // Ranges per side summed over the distinct instances timed at each size.
  // Cycling through a pool of equal total size keeps small sizes from
  // running out of L1 with a branch history trained on one input.
  std::size_t pool_ranges = std::size_t{1} << 17;
};

struct BenchRow {
  std::size_t size = 0;
  std::string engine;
  double median_ms = 0.0;  // per evaluation
};

namespace detail {

/// One timed workload. Repetitions per batch are calibrated so a batch lasts
/// at least `min_batch_ms`.
struct BenchJob {
  std::function<double()> fn;
  int reps = 1;
  std::vector<double> batches;

  void calibrate(double min_batch_ms) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    sink(fn());
    const double once = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    reps = std::max(1, static_cast<int>(std::ceil(min_batch_ms / std::max(once, 1e-6))));
  }

  double batch() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    for (int k = 0; k < reps; ++k) sink(fn());
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count() / reps;
  }

  double median() const {
    auto sorted = batches;
    std::sort(sorted.begin(), sorted.end());
    return sorted[sorted.size() / 2];
  }

  static void sink(double v) {
    static volatile double s = 0.0;
    s = s + v;
  }
};

}  // namespace detail

/// Times the naive and fast engines on identical random inputs with `size`
/// ranges per side at each size. Samples are taken round-robin over all
/// sizes and engines, so a slow stretch of the machine lands on every
/// workload instead of one; each row reports the median batch.
inline std::vector<BenchRow> cost_benchmark(const std::vector<std::size_t>& sizes,
                                            std::uint64_t seed, const BenchOptions& opts = {}) {
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw InfeasibleSpec("benchmark sizes must be ascending");
  }
  if (opts.samples < 1) throw InfeasibleSpec("benchmark needs at least one sample");
  const MetricConfig cfg;

  std::vector<std::vector<Scenario>> pools;
  for (const auto n : sizes) {
    std::mt19937_64 seeds(seed + n);
    auto& pool = pools.emplace_back(
        std::max<std::size_t>(1, opts.pool_ranges / std::max<std::size_t>(n, 1)));
    for (auto& s : pool) {
      ScenarioSpec spec;
      spec.domain = opts.domain;
      spec.n_real = n;
      spec.n_pred = n;
      spec.min_len = opts.min_len;
      spec.max_len = opts.max_len;
      spec.seed = seeds();
      s = gen_random(spec);
    }
  }

  std::vector<BenchRow> rows;
  std::vector<detail::BenchJob> jobs;
  std::vector<std::size_t> cursor(sizes.size(), 0);
  const auto add = [&](std::size_t k, std::string engine, auto eval) {
    rows.push_back({sizes[k], std::move(engine), 0.0});
    auto& job = jobs.emplace_back();
    job.fn = [&pools, &cursor, k, eval] {
      const auto& pool = pools[k];
      return eval(pool[cursor[k]++ % pool.size()]);
    };
  };
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    add(k, "naive", [&cfg](const Scenario& s) {
      const auto r = evaluate_naive(s.real, s.pred, cfg);
      return r.recall + r.precision;
    });
    add(k, "fast", [&cfg](const Scenario& s) {
      const auto r = evaluate_fast(s.real, s.pred, cfg);
      return r.recall + r.precision;
    });
    if (opts.include_classical) {
      add(k, "classical-naive", [](const Scenario& s) {
        return static_cast<double>(classical_counts_by_points(s.real, s.pred).tp);
      });
      add(k, "classical-fast", [](const Scenario& s) {
        return static_cast<double>(classical_counts(s.real, s.pred).tp);
      });
    }
  }

  for (auto& job : jobs) {
    job.calibrate(opts.min_sample_ms);
    job.batch();  // warm-up
  }
  for (int round = 0; round < opts.samples; ++round) {
    for (auto& job : jobs) job.batches.push_back(job.batch());
  }
  for (std::size_t k = 0; k < jobs.size(); ++k) rows[k].median_ms = jobs[k].median();
  return rows;
}

}  // namespace rbpr::synth
