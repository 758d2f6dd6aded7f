#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbpr/classical.hpp"
#include "rbpr/config.hpp"
#include "rbpr/errors.hpp"
#include "rbpr/fast_engine.hpp"
#include "rbpr/label_io.hpp"

namespace rbpr {

class DomainMismatch : public Error {
 public:
  using Error::Error;
};

struct ReportOptions {
  std::string name;
  bool predictions_as_points = false;
  bool allow_domain_mismatch = false;
};

/// Every score computed for one (real, predicted) pair. Scores are empty
/// when undefined; the matching flag names the reason.
struct EvaluationReport {
  struct BiasRecall {
    std::string bias;
    std::optional<double> value;
  };
  struct FBeta {
    double beta = 1.0;
    double range_based = 0.0;
    double classical = 0.0;
    bool range_based_from_undefined = false;
    bool classical_from_undefined = false;
  };

  std::string name;
  ResolvedConfig config;
  bool predictions_as_points = false;

  std::int64_t n_points = 0;
  std::size_t n_real = 0;
  std::size_t n_pred = 0;
  std::size_t n_real_input = 0;
  std::size_t n_pred_input = 0;

  std::optional<double> recall_t;
  std::optional<double> precision_t;
  std::vector<BiasRecall> recall_t_by_bias;

  ConfusionCounts counts;
  std::optional<double> precision;
  std::optional<double> recall;

  std::vector<FBeta> f_beta;
  std::vector<std::string> flags;
  std::vector<std::string> warnings;
  double wall_time_ms = 0.0;
};

inline EvaluationReport build_report(const LabelData& real, const LabelData& pred,
                                     const ResolvedConfig& cfg, const ReportOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.metric.validate();

  EvaluationReport rep;
  rep.name = opts.name;
  rep.config = cfg;
  rep.predictions_as_points = opts.predictions_as_points;

  if (real.domain_declared && pred.domain_declared && real.domain != pred.domain) {
    if (!opts.allow_domain_mismatch) {
      throw DomainMismatch("domain mismatch: real labels have " +
                           std::to_string(real.domain.n_points) + " points, predictions have " +
                           std::to_string(pred.domain.n_points));
    }
    rep.warnings.push_back("domain mismatch allowed: " + std::to_string(real.domain.n_points) +
                           " vs " + std::to_string(pred.domain.n_points) + " points");
  }
  rep.n_points = std::max(real.domain.n_points, pred.domain.n_points);
  rep.warnings.insert(rep.warnings.end(), real.warnings.begin(), real.warnings.end());
  rep.warnings.insert(rep.warnings.end(), pred.warnings.begin(), pred.warnings.end());

  const RangeSeries& r = real.series;
  const RangeSeries p = opts.predictions_as_points
                            ? RangeSeries::from_disjoint(to_unit_ranges(pred.series))
                            : pred.series;
  rep.n_real = r.size();
  rep.n_pred = p.size();
  rep.n_real_input = r.input_count();
  rep.n_pred_input = opts.predictions_as_points ? p.size() : pred.series.input_count();

  const std::size_t clamps_before =
      cfg.metric.recall_gamma.clamp_count() + cfg.metric.precision_gamma.clamp_count();

  const auto scores = evaluate_partial(cfg.engine, r, p, cfg.metric);
  rep.recall_t = scores.recall;
  rep.precision_t = scores.precision;
  if (!rep.recall_t) rep.flags.push_back("recall_t_undefined");
  if (!rep.precision_t) rep.flags.push_back("precision_t_undefined");

  for (const auto shape : {BiasShape::flat, BiasShape::front, BiasShape::back, BiasShape::middle}) {
    MetricConfig c = cfg.metric;
    c.recall_bias = BiasKind::builtin(shape);
    std::optional<double> v;
    if (!r.empty()) v = p.empty() ? recall_t(r, p, c) : evaluate(cfg.engine, r, p, c).recall;
    rep.recall_t_by_bias.push_back({std::string(to_string(shape)), v});
  }

  rep.counts = classical_counts(real.series, pred.series);
  const auto classical = classical_precision_recall(rep.counts);
  rep.precision = classical.precision;
  rep.recall = classical.recall;
  if (!rep.precision) rep.flags.push_back("precision_undefined");
  if (!rep.recall) rep.flags.push_back("recall_undefined");

  for (const double beta : cfg.betas) {
    EvaluationReport::FBeta fb;
    fb.beta = beta;
    fb.range_based_from_undefined = !rep.recall_t || !rep.precision_t;
    fb.classical_from_undefined = !rep.precision || !rep.recall;
    fb.range_based = fb.range_based_from_undefined
                         ? 0.0
                         : f_beta(*rep.precision_t, *rep.recall_t, beta);
    fb.classical = fb.classical_from_undefined ? 0.0 : f_beta(*rep.precision, *rep.recall, beta);
    rep.f_beta.push_back(fb);
  }
  if (std::any_of(rep.f_beta.begin(), rep.f_beta.end(),
                  [](const auto& f) { return f.range_based_from_undefined; })) {
    rep.flags.push_back("f_beta_t_from_undefined");
  }
  if (std::any_of(rep.f_beta.begin(), rep.f_beta.end(),
                  [](const auto& f) { return f.classical_from_undefined; })) {
    rep.flags.push_back("f_beta_from_undefined");
  }

  const std::size_t clamps =
      cfg.metric.recall_gamma.clamp_count() + cfg.metric.precision_gamma.clamp_count() -
      clamps_before;
  if (clamps > 0) {
    rep.warnings.push_back("custom gamma returned values outside [0, 1]; clamped " +
                           std::to_string(clamps) + " time(s)");
  }

  rep.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// Shortest decimal form, e.g. 0.5 or 2.
inline std::string format_beta(double beta) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, beta);
  return std::string(buf, res.ptr);
}

namespace detail {

inline nlohmann::ordered_json score_json(std::optional<double> v) {
  if (!v) return nullptr;
  return std::round(*v * 1e6) / 1e6;
}

inline std::string score_text(std::optional<double> v) {
  return v ? format_score(*v) : std::string("null");
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const EvaluationReport& r) {
  using nlohmann::ordered_json;
  const auto& m = r.config.metric;
  ordered_json betas = ordered_json::array();
  for (const double b : r.config.betas) betas.push_back(b);

  ordered_json j;
  j["name"] = r.name;
  j["engine"] = std::string(to_string(r.config.engine));
  j["config"] = {
      {"preset", r.config.preset ? ordered_json(std::string(to_string(*r.config.preset)))
                                 : ordered_json(nullptr)},
      {"alpha", m.alpha},
      {"recall_gamma", m.recall_gamma.name()},
      {"precision_gamma", m.precision_gamma.name()},
      {"recall_bias", m.recall_bias.name()},
      {"precision_bias", m.precision_bias.name()},
      {"betas", betas},
      {"predictions_as_points", r.predictions_as_points},
  };
  j["n_points"] = r.n_points;
  j["n_real"] = r.n_real;
  j["n_pred"] = r.n_pred;
  j["n_real_input"] = r.n_real_input;
  j["n_pred_input"] = r.n_pred_input;
  j["recall_t"] = detail::score_json(r.recall_t);
  j["precision_t"] = detail::score_json(r.precision_t);
  ordered_json by_bias = ordered_json::object();
  for (const auto& b : r.recall_t_by_bias) by_bias[b.bias] = detail::score_json(b.value);
  j["recall_t_by_bias"] = by_bias;
  j["classical"] = {
      {"tp", r.counts.tp},
      {"fp", r.counts.fp},
      {"fn", r.counts.fn},
      {"precision", detail::score_json(r.precision)},
      {"recall", detail::score_json(r.recall)},
  };
  ordered_json fb = ordered_json::array();
  for (const auto& f : r.f_beta) {
    fb.push_back({{"beta", f.beta},
                  {"f_beta_t", detail::score_json(f.range_based)},
                  {"f_beta", detail::score_json(f.classical)},
                  {"f_beta_t_from_undefined", f.range_based_from_undefined},
                  {"f_beta_from_undefined", f.classical_from_undefined}});
  }
  j["f_beta"] = fb;
  j["flags"] = r.flags;
  j["warnings"] = r.warnings;
  j["wall_time_ms"] = std::round(r.wall_time_ms * 1e3) / 1e3;
  return j;
}

inline void write_text(std::ostream& out, const EvaluationReport& r) {
  const auto& m = r.config.metric;
  out << "report " << (r.name.empty() ? "-" : r.name) << '\n';
  out << "  engine               " << to_string(r.config.engine) << '\n';
  out << "  preset               "
      << (r.config.preset ? std::string(to_string(*r.config.preset)) : std::string("none"))
      << '\n';
  out << "  alpha                " << format_score(m.alpha) << '\n';
  out << "  gamma                recall=" << m.recall_gamma.name()
      << " precision=" << m.precision_gamma.name() << '\n';
  out << "  bias                 recall=" << m.recall_bias.name()
      << " precision=" << m.precision_bias.name() << '\n';
  out << "  pred_as_points       " << (r.predictions_as_points ? "yes" : "no") << '\n';
  out << "  n_points             " << r.n_points << '\n';
  out << "  n_real               " << r.n_real << " (" << r.n_real_input << " input)\n";
  out << "  n_pred               " << r.n_pred << " (" << r.n_pred_input << " input)\n";
  out << "  recall_t             " << detail::score_text(r.recall_t) << '\n';
  for (const auto& b : r.recall_t_by_bias) {
    std::string key = "recall_t." + b.bias;
    key.resize(21, ' ');
    out << "  " << key << detail::score_text(b.value) << '\n';
  }
  out << "  precision_t          " << detail::score_text(r.precision_t) << '\n';
  out << "  tp/fp/fn             " << r.counts.tp << '/' << r.counts.fp << '/' << r.counts.fn
      << '\n';
  out << "  precision            " << detail::score_text(r.precision) << '\n';
  out << "  recall               " << detail::score_text(r.recall) << '\n';
  for (const auto& f : r.f_beta) {
    std::string key = "f" + format_beta(f.beta) + "_t";
    key.resize(21, ' ');
    out << "  " << key << format_score(f.range_based)
        << (f.range_based_from_undefined ? " (undefined input)" : "") << '\n';
    key = "f" + format_beta(f.beta);
    key.resize(21, ' ');
    out << "  " << key << format_score(f.classical)
        << (f.classical_from_undefined ? " (undefined input)" : "") << '\n';
  }
  for (const auto& f : r.flags) out << "  flag                 " << f << '\n';
  for (const auto& w : r.warnings) out << "  warning              " << w << '\n';
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r.wall_time_ms);
  out << "  wall_time_ms         " << buf << '\n';
}

/// Long-format rows for bar charts: dataset, metric, value (empty if undefined).
inline void write_plot_header(std::ostream& out) { out << "dataset,metric,value\n"; }

inline void write_plot_rows(std::ostream& out, const EvaluationReport& r) {
  const auto row = [&](const std::string& metric, std::optional<double> v) {
    out << r.name << ',' << metric << ',' << (v ? format_score(*v) : std::string()) << '\n';
  };
  row("Recall", r.recall);
  for (const auto& b : r.recall_t_by_bias) {
    std::string label = b.bias;
    label[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    row("Recall_T_" + label, b.value);
  }
  row("Precision", r.precision);
  row("Precision_T", r.precision_t);
  for (const auto& f : r.f_beta) {
    row("F" + format_beta(f.beta), f.classical);
    row("F" + format_beta(f.beta) + "_T", f.range_based);
  }
}

}  // namespace rbpr
