#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rbpr/errors.hpp"
#include "rbpr/time_range.hpp"

// Label files are comma-separated UTF-8 text with LF or CRLF line endings.
//
//   ranges form            points form
//   -----------            -----------
//   # n_points=20          label
//   start,end              0
//   1,5                    1
//   11,15                  1
//
// A ranges file may declare its domain with a leading "# n_points=N" line;
// otherwise the domain is inferred as one past the last end. In the points
// form the row index is the timestamp and the row count is the domain.

namespace rbpr {

enum class LabelFormat { ranges, points };

inline std::optional<LabelFormat> label_format_from_string(std::string_view s) {
  if (s == "ranges") return LabelFormat::ranges;
  if (s == "points") return LabelFormat::points;
  return std::nullopt;
}

struct LabelData {
  RangeSeries series;
  TimeDomain domain;
  bool domain_declared = false;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

/// Recognizes "# n_points=N"; other comment lines are ignored.
inline std::optional<std::int64_t> parse_domain_comment(std::string_view line) {
  line = trim(line.substr(1));
  constexpr std::string_view key = "n_points";
  if (line.substr(0, key.size()) != key) return std::nullopt;
  line = trim(line.substr(key.size()));
  if (line.empty() || line.front() != '=') return std::nullopt;
  return parse_int(line.substr(1));
}

}  // namespace detail

inline LabelData parse_labels(std::istream& in, LabelFormat format,
                              const std::string& source = "<stream>") {
  LabelData out;
  std::optional<std::int64_t> declared;
  bool header_seen = false;
  std::vector<TimeRange> rows;
  std::vector<std::size_t> row_lines;
  std::int64_t point_rows = 0;
  std::optional<Timestamp> run_start;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (header_seen) continue;
      if (auto n = detail::parse_domain_comment(line)) {
        if (*n < 1) throw ParseError(source, line_no, "n_points must be positive");
        declared = *n;
      }
      continue;
    }
    if (!header_seen) {
      const std::string_view expected = format == LabelFormat::ranges ? "start,end" : "label";
      if (line != expected) {
        throw ParseError(source, line_no,
                         "expected header '" + std::string(expected) + "', got '" +
                             std::string(line) + "'");
      }
      header_seen = true;
      continue;
    }

    if (format == LabelFormat::ranges) {
      const auto comma = line.find(',');
      if (comma == std::string_view::npos) {
        throw ParseError(source, line_no, "expected 'start,end'");
      }
      const auto s = detail::parse_int(line.substr(0, comma));
      const auto e = detail::parse_int(line.substr(comma + 1));
      if (!s || !e) throw ParseError(source, line_no, "malformed range row '" + std::string(line) + "'");
      if (*s < 0 || *s > *e) {
        throw ParseError(source, line_no,
                         "invalid range [" + std::to_string(*s) + "," + std::to_string(*e) + "]");
      }
      if (declared && *e >= *declared) {
        throw ParseError(source, line_no,
                         "range [" + std::to_string(*s) + "," + std::to_string(*e) +
                             "] outside domain of " + std::to_string(*declared) + " points");
      }
      rows.emplace_back(*s, *e);
      row_lines.push_back(line_no);
    } else {
      const auto v = detail::parse_int(line);
      if (!v || (*v != 0 && *v != 1)) {
        throw ParseError(source, line_no, "label must be 0 or 1, got '" + std::string(line) + "'");
      }
      const Timestamp t = point_rows++;
      if (*v == 1 && !run_start) run_start = t;
      if (*v == 0 && run_start) {
        rows.emplace_back(*run_start, t - 1);
        run_start.reset();
      }
    }
  }

  if (!header_seen) throw ParseError(source, line_no, "missing header");

  if (format == LabelFormat::points) {
    if (point_rows == 0) throw ParseError(source, line_no, "no label rows");
    if (run_start) rows.emplace_back(*run_start, point_rows - 1);
    if (declared && *declared != point_rows) {
      throw ParseError(source, line_no,
                       "declared n_points=" + std::to_string(*declared) + " but found " +
                           std::to_string(point_rows) + " rows");
    }
    out.series = RangeSeries::from_disjoint(std::move(rows));
    out.domain = TimeDomain{point_rows};
    out.domain_declared = true;
    return out;
  }

  // Report rows that normalization merges, in timestamp order.
  std::vector<std::size_t> order(rows.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a] < rows[b]; });
  std::optional<TimeRange> reach;
  for (const auto k : order) {
    const auto& r = rows[k];
    if (reach && r.start() <= reach->end() + 1) {
      const bool adjacent = r.start() == reach->end() + 1;
      out.warnings.push_back(source + ":" + std::to_string(row_lines[k]) + ": range [" +
                             std::to_string(r.start()) + "," + std::to_string(r.end()) + "] " +
                             (adjacent ? "is adjacent to" : "overlaps") +
                             " an earlier range; merged");
      reach = TimeRange(reach->start(), std::max(reach->end(), r.end()));
    } else {
      reach = r;
    }
  }

  out.series = RangeSeries::normalize(std::move(rows));
  if (declared) {
    out.domain = TimeDomain{*declared};
    out.domain_declared = true;
  } else {
    out.domain = TimeDomain{out.series.empty() ? 1 : out.series.ranges().back().end() + 1};
  }
  return out;
}

inline LabelData parse_labels_file(const std::string& path, LabelFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_labels(in, format, path);
}

/// Writes the ranges form, declaring the domain when one is given.
inline void write_ranges(std::ostream& out, const RangeSeries& s,
                         std::optional<TimeDomain> domain = std::nullopt) {
  if (domain) out << "# n_points=" << domain->n_points << '\n';
  out << "start,end\n";
  for (const auto& r : s) out << r.start() << ',' << r.end() << '\n';
}

inline void write_points(std::ostream& out, const RangeSeries& s, TimeDomain domain) {
  out << "label\n";
  auto it = s.begin();
  for (Timestamp t = 0; t < domain.n_points; ++t) {
    while (it != s.end() && it->end() < t) ++it;
    out << (it != s.end() && it->contains(t) ? '1' : '0') << '\n';
  }
}

}  // namespace rbpr
