// rbpr: range-based precision/recall evaluator and scenario generator.
//
// Exit codes: 0 success, 1 unexpected failure, 2 label/manifest parse error
// or domain mismatch, 3 configuration error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rbpr/rbpr.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;

struct EvaluateArgs {
  std::string real;
  std::string pred;
  std::string format = "ranges";
  std::string real_format;
  std::string pred_format;
  std::string report = "text";
  std::string output;
  std::string plot_data;
  std::string manifest;
  std::string name;
  bool predictions_as_points = false;
  bool allow_domain_mismatch = false;
  unsigned jobs = 0;
};

struct ManifestEntry {
  std::string name;
  std::string real;
  std::string pred;
};

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rbpr::ParseError(path, 0, "cannot open manifest");
  const fs::path base = fs::path(path).parent_path();
  std::vector<ManifestEntry> out;
  std::string raw;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = std::string(rbpr::detail::trim(raw));
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "name,real,pred") {
        throw rbpr::ParseError(path, line_no, "expected header 'name,real,pred'");
      }
      header = true;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.emplace_back(rbpr::detail::trim(c));
    if (cols.size() != 3 || cols[0].empty()) {
      throw rbpr::ParseError(path, line_no, "expected 'name,real,pred'");
    }
    const auto resolve = [&](const std::string& p) {
      return fs::path(p).is_absolute() ? p : (base / p).string();
    };
    out.push_back({cols[0], resolve(cols[1]), resolve(cols[2])});
  }
  if (!header) throw rbpr::ParseError(path, line_no, "missing header");
  return out;
}

rbpr::LabelFormat format_or(const std::string& specific, const std::string& fallback) {
  const auto& s = specific.empty() ? fallback : specific;
  const auto f = rbpr::label_format_from_string(s);
  if (!f) throw rbpr::ConfigError("unknown label format '" + s + "' (expected ranges|points)");
  return *f;
}

rbpr::EvaluationReport evaluate_pair(const ManifestEntry& e, const EvaluateArgs& args,
                                     const rbpr::ResolvedConfig& cfg) {
  const auto real = rbpr::parse_labels_file(e.real, format_or(args.real_format, args.format));
  const auto pred = rbpr::parse_labels_file(e.pred, format_or(args.pred_format, args.format));
  rbpr::ReportOptions opts;
  opts.name = e.name;
  opts.predictions_as_points = args.predictions_as_points;
  opts.allow_domain_mismatch = args.allow_domain_mismatch;
  return rbpr::build_report(real, pred, cfg, opts);
}

std::vector<rbpr::EvaluationReport> evaluate_all(const std::vector<ManifestEntry>& entries,
                                                 const EvaluateArgs& args,
                                                 const rbpr::ResolvedConfig& cfg) {
  unsigned jobs = args.jobs ? args.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(entries.size(), 1)));
  std::vector<rbpr::EvaluationReport> reports(entries.size());
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < entries.size(); k += jobs) {
        reports[k] = evaluate_pair(entries[k], args, cfg);
      }
    }));
  }
  // get() rethrows the first worker failure
  for (auto& f : workers) f.get();
  return reports;
}

void write_reports(std::ostream& out, const std::vector<rbpr::EvaluationReport>& reports,
                   const std::string& kind, bool batch) {
  if (kind == "json") {
    if (batch) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : reports) arr.push_back(rbpr::to_json(r));
      out << arr.dump(2) << '\n';
    } else {
      out << rbpr::to_json(reports.front()).dump(2) << '\n';
    }
    return;
  }
  for (std::size_t k = 0; k < reports.size(); ++k) {
    if (k) out << '\n';
    rbpr::write_text(out, reports[k]);
  }
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  fn(out);
}

/// Config flags in command-line order, so presets and explicit flags
/// override each other by position.
std::vector<rbpr::ConfigFlag> ordered_config_flags(const CLI::App& app,
                                                   const std::map<const CLI::Option*, std::string>& names) {
  std::vector<rbpr::ConfigFlag> flags;
  std::map<const CLI::Option*, std::size_t> seen;
  for (const CLI::Option* opt : app.parse_order()) {
    const auto it = names.find(opt);
    if (it == names.end()) continue;
    const auto& results = opt->results();
    const std::size_t k = seen[opt]++;
    if (k < results.size()) flags.push_back({it->second, results[k]});
  }
  return flags;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-based precision and recall for time-series anomaly detection"};
  app.require_subcommand(0, 1);

  EvaluateArgs args;
  std::map<const CLI::Option*, std::string> config_names;
  const auto config_opt = [&](const std::string& name, const std::string& help) {
    auto* o = app.add_option("--" + name, help)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    config_names[o] = name;
    return o;
  };

  app.add_option("--real", args.real, "Ground-truth label file");
  app.add_option("--pred", args.pred, "Prediction label file");
  app.add_option("--format", args.format, "Label file format for both files")
      ->check(CLI::IsMember({"ranges", "points"}));
  app.add_option("--real-format", args.real_format, "Format override for --real")
      ->check(CLI::IsMember({"ranges", "points"}));
  app.add_option("--pred-format", args.pred_format, "Format override for --pred")
      ->check(CLI::IsMember({"ranges", "points"}));
  config_opt("alpha", "Existence weight for recall, in [0,1] (default 0)");
  config_opt("gamma", "Cardinality function for both metrics: one|reciprocal (default one)");
  config_opt("recall-gamma", "Cardinality function for recall");
  config_opt("precision-gamma", "Cardinality function for precision");
  config_opt("recall-bias", "Positional bias for recall: flat|front|back|middle (default flat)");
  config_opt("precision-bias", "Positional bias for precision (default flat)");
  config_opt("beta", "F-beta weight; repeatable (default 1)");
  config_opt("preset", "nab-standard|nab-low-fp|nab-low-fn");
  config_opt("engine", "naive|fast (default fast)");
  app.add_option("--report", args.report, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--output", args.output, "Report destination (default stdout)");
  app.add_option("--emit-plot-data", args.plot_data, "Write per-dataset score table (CSV)");
  app.add_flag("--predictions-as-points", args.predictions_as_points,
               "Score every predicted point as its own unit range");
  app.add_flag("--allow-domain-mismatch", args.allow_domain_mismatch,
               "Accept files that declare different n_points");
  app.add_option("--name", args.name, "Dataset name in the report (default: stem of --real)");
  app.add_option("--manifest", args.manifest, "Batch CSV 'name,real,pred'");
  app.add_option("--jobs", args.jobs, "Worker threads for --manifest (default: all cores)");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate scenarios and run the cost benchmark");
  synth->require_subcommand(1);

  rbpr::synth::ScenarioSpec spec;
  std::string placement = "random";
  std::string out_real, out_pred, out_front, out_back, gen_format = "ranges";
  auto* gen = synth->add_subcommand("gen", "Random real/predicted range sets");
  gen->add_option("--domain", spec.domain, "Number of time points")->capture_default_str();
  gen->add_option("--real-count", spec.n_real, "Real ranges")->capture_default_str();
  gen->add_option("--pred-count", spec.n_pred, "Predicted ranges (random placement)")->capture_default_str();
  gen->add_option("--min-len", spec.min_len)->capture_default_str();
  gen->add_option("--max-len", spec.max_len)->capture_default_str();
  gen->add_option("--placement", placement, "random|front|back|fragmented")
      ->check(CLI::IsMember({"random", "front", "back", "fragmented"}))
      ->capture_default_str();
  gen->add_option("--fraction", spec.fraction, "Coverage fraction for front/back")->capture_default_str();
  gen->add_option("--pieces", spec.pieces, "Pieces per range for fragmented")->capture_default_str();
  gen->add_option("--seed", spec.seed)->capture_default_str();
  gen->add_option("--format", gen_format)->check(CLI::IsMember({"ranges", "points"}));
  gen->add_option("--out-real", out_real)->required();
  gen->add_option("--out-pred", out_pred)->required();

  rbpr::synth::ScenarioSpec pair_spec;
  double pair_fraction = 0.3;
  auto* pair = synth->add_subcommand("positional-pair", "Mirror front/back prediction scenarios");
  pair->add_option("--domain", pair_spec.domain)->capture_default_str();
  pair->add_option("--real-count", pair_spec.n_real)->capture_default_str();
  pair->add_option("--min-len", pair_spec.min_len)->capture_default_str();
  pair->add_option("--max-len", pair_spec.max_len)->capture_default_str();
  pair->add_option("--fraction", pair_fraction, "Fraction of each real range predicted")->capture_default_str();
  pair->add_option("--seed", pair_spec.seed)->capture_default_str();
  pair->add_option("--out-real", out_real)->required();
  pair->add_option("--out-front", out_front)->required();
  pair->add_option("--out-back", out_back)->required();

  std::vector<std::size_t> sizes{1000, 2000, 4000, 8000};
  std::uint64_t bench_seed = 42;
  rbpr::synth::BenchOptions bench_opts;
  std::string bench_out;
  auto* bench = synth->add_subcommand("bench", "Time naive vs fast engines");
  bench->add_option("--sizes", sizes, "Ranges per side, ascending")->delimiter(',')->capture_default_str();
  bench->add_option("--seed", bench_seed)->capture_default_str();
  bench->add_option("--domain", bench_opts.domain)->capture_default_str();
  bench->add_option("--samples", bench_opts.samples)->capture_default_str();
  bench->add_flag("--classical", bench_opts.include_classical, "Also time classical counting");
  bench->add_option("--output", bench_out, "CSV destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*gen) {
      if (placement == "front") spec.placement = rbpr::synth::Placement::front_aligned;
      if (placement == "back") spec.placement = rbpr::synth::Placement::back_aligned;
      if (placement == "fragmented") spec.placement = rbpr::synth::Placement::fragmented;
      const auto s = rbpr::synth::gen_random(spec);
      for (const auto& [path, series] : {std::pair{out_real, &s.real}, std::pair{out_pred, &s.pred}}) {
        with_output(path, [&](std::ostream& o) {
          if (gen_format == "points") {
            rbpr::write_points(o, *series, s.domain);
          } else {
            rbpr::write_ranges(o, *series, s.domain);
          }
        });
      }
      return 0;
    }
    if (*pair) {
      const auto p = rbpr::synth::gen_positional_pair(pair_spec, pair_fraction);
      with_output(out_real, [&](std::ostream& o) { rbpr::write_ranges(o, p.real, p.domain); });
      with_output(out_front, [&](std::ostream& o) { rbpr::write_ranges(o, p.front_pred, p.domain); });
      with_output(out_back, [&](std::ostream& o) { rbpr::write_ranges(o, p.back_pred, p.domain); });
      return 0;
    }
    if (*bench) {
      const auto rows = rbpr::synth::cost_benchmark(sizes, bench_seed, bench_opts);
      with_output(bench_out, [&](std::ostream& o) {
        o << "size,engine,median_ms\n";
        for (const auto& r : rows) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.6f", r.median_ms);
          o << r.size << ',' << r.engine << ',' << buf << '\n';
        }
      });
      return 0;
    }

    const auto cfg = rbpr::resolve_config(ordered_config_flags(app, config_names));
    format_or(args.real_format, args.format);
    format_or(args.pred_format, args.format);

    std::vector<ManifestEntry> entries;
    const bool batch = !args.manifest.empty();
    if (batch) {
      if (!args.real.empty() || !args.pred.empty()) {
        throw rbpr::ConfigError("--manifest cannot be combined with --real/--pred");
      }
      entries = read_manifest(args.manifest);
    } else {
      if (args.real.empty() || args.pred.empty()) {
        throw rbpr::ConfigError("--real and --pred are required (or use --manifest)");
      }
      entries.push_back({args.name.empty() ? fs::path(args.real).stem().string() : args.name,
                         args.real, args.pred});
    }

    const auto reports = evaluate_all(entries, args, cfg);
    with_output(args.output, [&](std::ostream& o) { write_reports(o, reports, args.report, batch); });
    if (!args.plot_data.empty()) {
      with_output(args.plot_data, [&](std::ostream& o) {
        rbpr::write_plot_header(o);
        for (const auto& r : reports) rbpr::write_plot_rows(o, r);
      });
    }
    return 0;
  } catch (const rbpr::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const rbpr::DomainMismatch& e) {
    std::cerr << "error: " << e.what() << " (use --allow-domain-mismatch)\n";
    return kExitParse;
  } catch (const rbpr::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rbpr::InfeasibleSpec& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
