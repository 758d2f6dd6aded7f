#pragma once

#include <charconv>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbpr/bias.hpp"
#include "rbpr/errors.hpp"
#include "rbpr/fast_engine.hpp"
#include "rbpr/model.hpp"

namespace rbpr {

/// Scoring presets that approximate the Numenta application profiles:
/// front-biased recall, flat precision, gamma = 1, alpha = 0, and an F-beta
/// whose beta reflects the profile.
enum class Preset { nab_standard, nab_low_fp, nab_low_fn };

inline std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::nab_standard: return "nab-standard";
    case Preset::nab_low_fp: return "nab-low-fp";
    case Preset::nab_low_fn: return "nab-low-fn";
  }
  return "unknown";
}

inline std::optional<Preset> preset_from_string(std::string_view s) {
  if (s == "nab-standard") return Preset::nab_standard;
  if (s == "nab-low-fp") return Preset::nab_low_fp;
  if (s == "nab-low-fn") return Preset::nab_low_fn;
  return std::nullopt;
}

inline double preset_beta(Preset p) {
  switch (p) {
    case Preset::nab_low_fp: return 0.5;
    case Preset::nab_low_fn: return 2.0;
    default: return 1.0;
  }
}

inline BiasKind bias_from_string(std::string_view s) {
  if (s == "flat") return BiasKind::flat();
  if (s == "front") return BiasKind::front();
  if (s == "back") return BiasKind::back();
  if (s == "middle") return BiasKind::middle();
  throw ConfigError("unknown bias '" + std::string(s) + "' (expected flat|front|back|middle)");
}

inline GammaKind gamma_from_string(std::string_view s) {
  if (s == "one") return GammaKind::one();
  if (s == "reciprocal") return GammaKind::reciprocal();
  throw ConfigError("unknown gamma '" + std::string(s) + "' (expected one|reciprocal)");
}

struct ResolvedConfig {
  MetricConfig metric;
  std::vector<double> betas{1.0};
  Engine engine = Engine::fast;
  std::optional<Preset> preset;
};

/// One command-line setting, name without leading dashes.
struct ConfigFlag {
  std::string name;
  std::string value;
};

namespace detail {

inline double parse_real(std::string_view flag, std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("--" + std::string(flag) + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

/// Applies flags in order on top of the defaults, so a later flag overrides
/// an earlier preset and vice versa. Explicit --beta values replace the
/// preset's (or default) beta list; repeated --beta flags accumulate.
///
/// Recognized names: alpha, gamma, recall-gamma, precision-gamma,
/// recall-bias, precision-bias, beta, preset, engine.
inline ResolvedConfig resolve_config(std::span<const ConfigFlag> flags) {
  ResolvedConfig cfg;
  bool betas_explicit = false;
  for (const auto& [name, value] : flags) {
    if (name == "preset") {
      const auto p = preset_from_string(value);
      if (!p) {
        throw ConfigError("unknown preset '" + value +
                          "' (expected nab-standard|nab-low-fp|nab-low-fn)");
      }
      cfg.preset = *p;
      cfg.metric.alpha = 0.0;
      cfg.metric.recall_gamma = GammaKind::one();
      cfg.metric.precision_gamma = GammaKind::one();
      cfg.metric.recall_bias = BiasKind::front();
      cfg.metric.precision_bias = BiasKind::flat();
      cfg.betas = {preset_beta(*p)};
      betas_explicit = false;
    } else if (name == "alpha") {
      const double a = detail::parse_real(name, value);
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("--alpha must lie in [0, 1], got " + value);
      cfg.metric.alpha = a;
    } else if (name == "gamma") {
      cfg.metric.recall_gamma = gamma_from_string(value);
      cfg.metric.precision_gamma = cfg.metric.recall_gamma;
    } else if (name == "recall-gamma") {
      cfg.metric.recall_gamma = gamma_from_string(value);
    } else if (name == "precision-gamma") {
      cfg.metric.precision_gamma = gamma_from_string(value);
    } else if (name == "recall-bias") {
      cfg.metric.recall_bias = bias_from_string(value);
    } else if (name == "precision-bias") {
      cfg.metric.precision_bias = bias_from_string(value);
    } else if (name == "beta") {
      const double b = detail::parse_real(name, value);
      if (!(b > 0.0)) throw ConfigError("--beta must be positive, got " + value);
      if (!betas_explicit) cfg.betas.clear();
      betas_explicit = true;
      cfg.betas.push_back(b);
    } else if (name == "engine") {
      const auto e = engine_from_string(value);
      if (!e) throw ConfigError("unknown engine '" + value + "' (expected naive|fast)");
      cfg.engine = *e;
    } else {
      throw ConfigError("unknown setting '--" + name + "'");
    }
  }
  return cfg;
}

inline ResolvedConfig resolve_config(std::initializer_list<ConfigFlag> flags) {
  return resolve_config(std::span<const ConfigFlag>(flags.begin(), flags.size()));
}

}  // namespace rbpr
