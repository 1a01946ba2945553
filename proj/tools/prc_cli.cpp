// prc: train, evaluate and benchmark PRC / PRC-ROC / ROC / Gini trees and forests.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prc/benchmark.hpp"
#include "prc/curves.hpp"
#include "prc/data.hpp"
#include "prc/metrics.hpp"
#include "prc/model.hpp"

namespace {

struct SourceFlags {
  std::optional<int> scenario;
  std::string scenario_config;
  std::string csv;
  std::string label;
  std::string positive = "1";

  void add(CLI::App& cmd) {
    auto* sc = cmd.add_option("--scenario", scenario, "Simulation preset 1-5")->check(CLI::Range(1, 5));
    auto* cfg = cmd.add_option("--scenario-config", scenario_config,
                               "Flat key=value file with ScenarioSpec fields");
    auto* csv_opt = cmd.add_option("--csv", csv, "CSV file with a header row");
    cmd.add_option("--label", label, "Label column name (with --csv)");
    cmd.add_option("--positive", positive, "Label value mapped to the positive class")
        ->capture_default_str();
    sc->excludes(cfg)->excludes(csv_opt);
    cfg->excludes(csv_opt);
  }

  bool given() const { return scenario || !scenario_config.empty() || !csv.empty(); }

  std::string describe() const {
    if (scenario) return "scenario:" + std::to_string(*scenario);
    if (!scenario_config.empty()) return "scenario-config:" + scenario_config;
    return "csv:" + csv;
  }

  prc::Dataset load(std::uint64_t seed, bool verbose) const {
    if (scenario || !scenario_config.empty()) {
      prc::ScenarioSpec spec = scenario ? prc::scenario_preset(*scenario, seed)
                                        : prc::load_scenario_config(scenario_config);
      spec.rng_seed = seed;
      if (verbose) {
        std::cout << "# scenario parameters\n";
        std::istringstream lines(spec.describe());
        for (std::string l; std::getline(lines, l);) std::cout << "#   " << l << '\n';
      }
      return prc::generate_scenario(spec);
    }
    if (csv.empty()) throw CLI::ValidationError("one of --scenario, --scenario-config or --csv is required");
    if (label.empty()) throw CLI::ValidationError("--csv requires --label");
    return prc::load_csv(csv, label, positive);
  }
};

/// Restores a data source recorded in a model file.
SourceFlags source_from_provenance(const prc::DataProvenance& p) {
  SourceFlags s;
  auto rest = [&](std::string_view prefix) { return p.source.substr(prefix.size()); };
  if (p.source.rfind("scenario:", 0) == 0) {
    s.scenario = std::stoi(rest("scenario:"));
  } else if (p.source.rfind("scenario-config:", 0) == 0) {
    s.scenario_config = rest("scenario-config:");
  } else if (p.source.rfind("csv:", 0) == 0) {
    s.csv = rest("csv:");
    s.label = p.label_column;
    s.positive = p.positive_value;
  } else {
    throw std::invalid_argument("model file has no usable data source; pass one explicitly");
  }
  return s;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  const std::uint64_t s = prc::entropy_seed();
  std::cout << "# no --seed given; using seed " << s << '\n';
  return s;
}

void print_report(const std::string& name, const prc::MetricsReport& m) {
  constexpr std::size_t width = 14;
  std::cout << prc::report_header(width) << '\n' << prc::report_row(name, m, width) << '\n';
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct ModelFlags {
  std::size_t trees = 100;
  std::size_t mtry = 0;
  std::size_t max_depth = 10;
  std::size_t min_leaf = 5;
  unsigned threads = 0;

  void add(CLI::App& cmd) {
    cmd.add_option("--trees", trees, "Trees per forest (N_t)")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--mtry", mtry, "Features sampled per split (N_f); 0 = p for trees, floor(sqrt(p)) for forests")
        ->capture_default_str();
    cmd.add_option("--max-depth", max_depth, "Maximum depth (root-only tree has depth 1)")
        ->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--min-leaf", min_leaf, "Minimum leaf size")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--threads", threads, "Worker threads for forests (0 = all cores)")->capture_default_str();
  }

  prc::ModelConfig config() const {
    prc::ModelConfig c;
    c.n_trees = trees;
    c.mtry = mtry;
    c.max_depth = max_depth;
    c.min_leaf_size = min_leaf;
    c.threads = threads;
    return c;
  }
};

int cmd_train(const SourceFlags& src, const ModelFlags& mf, const std::string& kind_name,
              const std::optional<std::uint64_t>& seed_flag, double fraction, bool unstratified,
              const std::string& out) {
  const prc::ModelKind kind = prc::parse_model_kind(kind_name);
  const std::uint64_t seed = resolve_seed(seed_flag);
  const prc::Dataset data = src.load(seed, true);
  const prc::TrainTest parts = prc::split_for_seed(data, seed, fraction, !unstratified);

  prc::ModelConfig cfg = mf.config();
  cfg.seed = prc::model_seed_for(seed);
  prc::Model model = prc::train_model(kind, parts.train, cfg);
  model.provenance = {src.describe(), seed, fraction, !unstratified, src.label, src.positive};
  prc::save_model(model, out);

  std::cout << "model: " << prc::model_kind_name(kind) << "  seed: " << seed << '\n';
  std::cout << "data: " << data.n_rows() << " rows x " << data.n_features() << " features, "
            << data.count_positive() << " positive; train " << parts.train.n_rows() << ", test "
            << parts.test.n_rows() << '\n';
  if (model.calibration) {
    std::cout << "hybrid weight a: " << model.calibration->weight.value()
              << "  (OOB error PRC RF " << model.calibration->oob_error_prc << ", ROC RF "
              << model.calibration->oob_error_roc << ")\n";
  }
  if (model.oob) {
    std::cout << "OOB error: " << model.oob->error << "  (" << model.oob->n_scored
              << " rows scored, " << model.oob->n_excluded << " without out-of-bag votes)\n";
  }
  const auto pred = model.predict_labels(parts.test);
  print_report(prc::model_kind_name(kind), prc::metrics_report(pred, parts.test.labels()));
  std::cout << "wrote " << out << '\n';
  return 0;
}

int cmd_evaluate(const std::string& model_path, SourceFlags src,
                 std::optional<std::uint64_t> seed, std::optional<double> fraction,
                 const std::string& part, const std::string& json_out) {
  const prc::Model model = prc::load_model(model_path);
  if (!src.given()) src = source_from_provenance(model.provenance);
  const std::uint64_t data_seed = seed.value_or(model.provenance.data_seed);
  const double frac = fraction.value_or(model.provenance.split_fraction);

  const prc::Dataset data = src.load(data_seed, false);
  prc::Dataset eval;
  if (part == "all") {
    eval = data;
  } else {
    prc::TrainTest parts = prc::split_for_seed(data, data_seed, frac, model.provenance.stratified);
    eval = part == "train" ? std::move(parts.train) : std::move(parts.test);
  }
  const auto pred = model.predict_labels(eval);
  const auto counts = prc::confusion_counts(pred, eval.labels());
  const auto report = prc::metrics_report(counts);

  std::cout << "model: " << model_path << " (" << prc::model_kind_name(model.kind) << "), data: "
            << src.describe() << " seed " << data_seed << ", part " << part << " (" << eval.n_rows()
            << " rows)\n";
  print_report(prc::model_kind_name(model.kind), report);
  const std::string record = prc::evaluation_record(model_path, model.kind, part, counts, report);
  if (json_out.empty()) {
    std::cout << record;
  } else {
    std::ofstream(json_out, std::ios::binary) << record;
  }
  return 0;
}

int cmd_benchmark(const std::string& scenarios, const std::string& algorithms,
                  const std::string& seeds, std::size_t repetitions,
                  const std::optional<std::uint64_t>& base_seed, const ModelFlags& mf,
                  double fraction, std::optional<std::size_t> samples, const std::string& jsonl) {
  prc::BenchmarkOptions opt;
  for (const auto& s : split_list(scenarios)) opt.scenarios.push_back(std::stoi(s));
  for (const auto& a : split_list(algorithms)) opt.algorithms.push_back(prc::parse_model_kind(a));
  if (opt.algorithms.empty()) throw CLI::ValidationError("--algorithms: empty list");
  if (opt.scenarios.empty()) throw CLI::ValidationError("--scenarios: empty list");
  if (!seeds.empty()) {
    for (const auto& s : split_list(seeds)) opt.seeds.push_back(std::stoull(s));
  } else {
    const std::uint64_t first = resolve_seed(base_seed);
    for (std::size_t r = 0; r < repetitions; ++r) opt.seeds.push_back(first + r);
  }
  opt.model = mf.config();
  opt.split_fraction = fraction;
  opt.n_samples = samples;

  const auto result = prc::run_benchmark(opt, [](const prc::CellResult& c) {
    std::cerr << "  scenario " << c.scenario << ' ' << prc::model_kind_name(c.algorithm) << " seed "
              << c.seed << (c.ok ? " ok" : " FAILED") << '\n';
  });
  std::cout << prc::render_benchmark(result, opt);
  if (!jsonl.empty()) std::ofstream(jsonl, std::ios::binary) << prc::benchmark_jsonl(result);
  return result.all_ok() ? 0 : 1;
}

int cmd_curve(const SourceFlags& src, const std::optional<std::uint64_t>& seed_flag,
              std::size_t feature, const std::string& mode, const std::string& out_path) {
  const std::uint64_t seed = src.scenario || !src.scenario_config.empty() ? resolve_seed(seed_flag) : 0;
  const prc::Dataset data = src.load(seed, false);
  if (feature >= data.n_features()) {
    throw std::invalid_argument("--feature " + std::to_string(feature) + " out of range (dataset has " +
                                std::to_string(data.n_features()) + " features)");
  }
  const bool prc_mode = mode == "prc";
  const auto series = prc_mode ? prc::auprc(data.column(feature), data.labels())
                               : prc::auc(data.column(feature), data.labels());

  std::ostringstream os;
  char buf[64];
  auto num = [&](double v) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
  };
  os << "# mode=" << mode << " feature=" << feature << " name=" << data.feature_names()[feature]
     << " n=" << data.n_rows() << " baseline=" << num(series.baseline) << " area=" << num(series.area)
     << " raw_area=" << num(series.raw_area) << '\n';
  if (prc_mode) {
    os << "threshold,recall,precision,flipped\n";
    for (std::size_t j = 0; j < series.size(); ++j) {
      os << num(series.thresholds[j]) << ',' << num(series.recall[j]) << ','
         << num(series.precision[j]) << ',' << int(series.flipped[j]) << '\n';
    }
  } else {
    os << "threshold,tpr,fpr\n";
    for (std::size_t j = 0; j < series.size(); ++j) {
      os << num(series.thresholds[j]) << ',' << num(series.tpr[j]) << ',' << num(series.fpr[j])
         << '\n';
    }
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream(out_path, std::ios::binary) << os.str();
    std::cout << "area " << num(series.area) << ", wrote " << out_path << '\n';
  }
  return 0;
}

int cmd_generate(const SourceFlags& src, const std::optional<std::uint64_t>& seed_flag,
                 const std::string& out) {
  if (!src.scenario && src.scenario_config.empty()) {
    throw CLI::ValidationError("generate needs --scenario or --scenario-config");
  }
  const std::uint64_t seed = resolve_seed(seed_flag);
  const prc::Dataset data = src.load(seed, true);
  prc::write_csv(data, out);
  std::cout << "wrote " << data.n_rows() << " rows to " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PRC / PRC-ROC classification trees and random forests for imbalanced data"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Train a tree or forest and write a model file");
  SourceFlags train_src;
  ModelFlags train_model;
  std::string kind;
  std::optional<std::uint64_t> train_seed;
  double train_fraction = 0.7;
  bool unstratified = false;
  std::string out;
  train_src.add(*train);
  train_model.add(*train);
  train->add_option("--model", kind, "prc-tree, prc-roc-tree, roc-tree, gini-tree, prc-rf, prc-roc-rf, roc-rf, gini-rf")
      ->required();
  train->add_option("--seed", train_seed, "Seed for data generation, splitting and training");
  train->add_option("--split-fraction", train_fraction, "Training fraction")->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  train->add_flag("--unstratified", unstratified, "Plain shuffle split instead of stratified");
  train->add_option("--out", out, "Model file to write")->required();

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score a model file on a dataset");
  std::string model_path;
  SourceFlags eval_src;
  std::optional<std::uint64_t> eval_seed;
  std::optional<double> eval_fraction;
  std::string part = "test";
  std::string eval_json;
  evaluate->add_option("model", model_path, "Model file")->required()->check(CLI::ExistingFile);
  eval_src.add(*evaluate);
  evaluate->add_option("--seed", eval_seed, "Data seed (default: the one recorded in the model)");
  evaluate->add_option("--split-fraction", eval_fraction, "Training fraction (default: recorded)");
  evaluate->add_option("--part", part, "Rows to score")->check(CLI::IsMember({"test", "train", "all"}))
      ->capture_default_str();
  evaluate->add_option("--json", eval_json, "Write the machine-readable record here instead of stdout");

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Run the scenario x algorithm matrix");
  std::string scenarios = "1,2,3,4,5";
  std::string algorithms;
  std::string seeds;
  std::size_t repetitions = 5;
  std::optional<std::uint64_t> bench_seed;
  ModelFlags bench_model;
  double bench_fraction = 0.7;
  std::optional<std::size_t> samples;
  std::string jsonl;
  bench->add_option("--scenarios", scenarios, "Comma-separated presets")->capture_default_str();
  bench->add_option("--algorithms", algorithms, "Comma-separated model kinds")->required();
  bench->add_option("--seeds", seeds, "Comma-separated seeds (overrides --repetitions)");
  bench->add_option("--repetitions", repetitions, "Seeds seed, seed+1, ...")->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "First seed for --repetitions");
  bench_model.add(*bench);
  bench->add_option("--split-fraction", bench_fraction, "Training fraction")->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--samples", samples, "Override the preset sample count");
  bench->add_option("--jsonl", jsonl, "Write cell and summary records (JSON Lines)");

  // curve
  auto* curve = app.add_subcommand("curve", "Dump a PRC or ROC curve of one feature as CSV");
  SourceFlags curve_src;
  std::optional<std::uint64_t> curve_seed;
  std::size_t feature = 0;
  std::string mode = "prc";
  std::string curve_out;
  curve_src.add(*curve);
  curve->add_option("--seed", curve_seed, "Scenario seed");
  curve->add_option("--feature", feature, "Feature index (0-based)")->required();
  curve->add_option("--mode", mode, "prc or roc")->check(CLI::IsMember({"prc", "roc"}))->capture_default_str();
  curve->add_option("--out", curve_out, "Output file (default stdout)");

  // generate
  auto* gen = app.add_subcommand("generate", "Write a simulated scenario as CSV");
  SourceFlags gen_src;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_out;
  gen_src.add(*gen);
  gen->add_option("--seed", gen_seed, "Scenario seed");
  gen->add_option("--out", gen_out, "CSV file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*train) return cmd_train(train_src, train_model, kind, train_seed, train_fraction, unstratified, out);
    if (*evaluate) return cmd_evaluate(model_path, eval_src, eval_seed, eval_fraction, part, eval_json);
    if (*bench) {
      return cmd_benchmark(scenarios, algorithms, seeds, repetitions, bench_seed, bench_model,
                           bench_fraction, samples, jsonl);
    }
    if (*curve) return cmd_curve(curve_src, curve_seed, feature, mode, curve_out);
    if (*gen) return cmd_generate(gen_src, gen_seed, gen_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "prc: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "prc: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
