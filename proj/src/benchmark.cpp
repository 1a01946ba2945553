#include "prc/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace prc {

using nlohmann::json;

TrainTest split_for_seed(const Dataset& data, std::uint64_t seed, double train_fraction,
                         bool stratified) {
  Rng rng(derive_seed(seed, kSplitStream));
  auto [train, test] = train_test_split(data, train_fraction, stratified, rng);
  return {std::move(train), std::move(test)};
}

std::uint64_t model_seed_for(std::uint64_t seed) noexcept {
  return derive_seed(seed, kModelStream);
}

bool BenchmarkResult::all_ok() const noexcept {
  return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.ok; });
}

Rate median(std::vector<Rate> values) {
  std::vector<double> v;
  for (const auto& r : values) {
    if (r) v.push_back(*r);
  }
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

namespace {

CellResult run_cell(int scenario, ModelKind kind, std::uint64_t seed,
                    const BenchmarkOptions& options) {
  CellResult cell;
  cell.scenario = scenario;
  cell.algorithm = kind;
  cell.seed = seed;
  try {
    ScenarioSpec spec = scenario_preset(scenario, seed);
    if (options.n_samples) spec.n_samples = *options.n_samples;
    const Dataset data = generate_scenario(spec);
    const TrainTest parts = split_for_seed(data, seed, options.split_fraction, true);

    ModelConfig cfg = options.model;
    cfg.seed = model_seed_for(seed);
    const auto start = std::chrono::steady_clock::now();
    const Model model = train_model(kind, parts.train, cfg);
    cell.train_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto predictions = model.predict_labels(parts.test);
    cell.counts = confusion_counts(predictions, parts.test.labels());
    cell.report = metrics_report(cell.counts);
    if (model.oob) cell.oob_error = model.oob->error;
    if (model.calibration) cell.hybrid_weight = model.calibration->weight.value();
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  return cell;
}

SummaryRow summarize(int scenario, ModelKind kind, const std::vector<const CellResult*>& cells) {
  SummaryRow row;
  row.scenario = scenario;
  row.algorithm = kind;
  std::vector<Rate> recall, spec, prec, acc, f1s, oob, weight, secs;
  for (const auto* c : cells) {
    if (!c->ok) {
      ++row.n_failed;
      continue;
    }
    ++row.n_ok;
    recall.push_back(c->report.recall);
    spec.push_back(c->report.specificity);
    prec.push_back(c->report.precision);
    acc.push_back(c->report.accuracy);
    f1s.push_back(c->report.f1);
    oob.push_back(c->oob_error);
    weight.push_back(c->hybrid_weight);
    secs.push_back(c->train_seconds);
  }
  row.median = {median(recall), median(spec), median(prec), median(acc), median(f1s)};
  row.median_oob_error = median(oob);
  row.median_hybrid_weight = median(weight);
  row.median_train_seconds = median(secs).value_or(0.0);
  return row;
}

json rate_json(const Rate& r) { return r ? json(*r) : json(nullptr); }

void put_metrics(json& j, const MetricsReport& m) {
  j["recall"] = rate_json(m.recall);
  j["specificity"] = rate_json(m.specificity);
  j["precision"] = rate_json(m.precision);
  j["accuracy"] = rate_json(m.accuracy);
  j["f1"] = rate_json(m.f1);
}

}  // namespace

BenchmarkResult run_benchmark(const BenchmarkOptions& options,
                              const std::function<void(const CellResult&)>& on_cell) {
  if (options.scenarios.empty()) throw std::invalid_argument("benchmark: no scenarios given");
  if (options.algorithms.empty()) throw std::invalid_argument("benchmark: no algorithms given");
  if (options.seeds.empty()) throw std::invalid_argument("benchmark: no seeds given");
  for (int s : options.scenarios) scenario_preset(s, 0);

  BenchmarkResult result;
  for (int s : options.scenarios) {
    for (ModelKind k : options.algorithms) {
      std::vector<const CellResult*> group;
      const std::size_t first = result.cells.size();
      for (std::uint64_t seed : options.seeds) {
        result.cells.push_back(run_cell(s, k, seed, options));
        if (on_cell) on_cell(result.cells.back());
      }
      for (std::size_t i = first; i < result.cells.size(); ++i) group.push_back(&result.cells[i]);
      result.rows.push_back(summarize(s, k, group));
    }
  }
  return result;
}

std::string render_benchmark(const BenchmarkResult& result, const BenchmarkOptions& options) {
  std::ostringstream os;
  constexpr std::size_t width = 14;
  const std::string dashes(width + 62, '-');
  os << "Medians over " << options.seeds.size() << " seed(s), train fraction "
     << options.split_fraction << " (stratified)\n";
  for (int s : options.scenarios) {
    ScenarioSpec spec = scenario_preset(s, 0);
    if (options.n_samples) spec.n_samples = *options.n_samples;
    os << "\nScenario " << s << ": n=" << spec.n_samples
       << ", minority=" << spec.minority_fraction << ", informative=" << spec.n_informative
       << " (means " << spec.mean_minority << " vs " << spec.mean_majority
       << "), noise=" << spec.n_noise << " (mean " << spec.mean_noise << "), sd=" << spec.sd
       << "\n";
    os << report_header(width) << "     OOB err\n";
    for (bool forests : {false, true}) {
      bool printed = false;
      for (const auto& row : result.rows) {
        if (row.scenario != s || is_forest(row.algorithm) != forests) continue;
        if (forests && !printed) {
          bool any_tree = std::any_of(result.rows.begin(), result.rows.end(), [&](const SummaryRow& r) {
            return r.scenario == s && !is_forest(r.algorithm);
          });
          if (any_tree) os << dashes << '\n';
        }
        printed = true;
        os << report_row(model_kind_name(row.algorithm), row.median, width);
        os << "  " << (row.median_oob_error ? format_rate(row.median_oob_error) : "       -");
        if (row.n_failed) os << "  (" << row.n_failed << " failed)";
        os << '\n';
      }
    }
  }
  for (const auto& c : result.cells) {
    if (!c.ok) {
      os << "FAILED scenario " << c.scenario << ' ' << model_kind_name(c.algorithm) << " seed "
         << c.seed << ": " << c.error << '\n';
    }
  }
  return os.str();
}

std::string benchmark_jsonl(const BenchmarkResult& result) {
  std::string out;
  for (const auto& c : result.cells) {
    json j;
    j["record"] = "cell";
    j["scenario"] = c.scenario;
    j["algorithm"] = model_kind_name(c.algorithm);
    j["seed"] = c.seed;
    j["status"] = c.ok ? "ok" : "failed";
    put_metrics(j, c.ok ? c.report : MetricsReport{});
    j["oob_error"] = rate_json(c.oob_error);
    j["hybrid_weight"] = rate_json(c.hybrid_weight);
    j["train_seconds"] = c.train_seconds;
    j["error"] = c.ok ? json(nullptr) : json(c.error);
    out += j.dump() + "\n";
  }
  for (const auto& r : result.rows) {
    json j;
    j["record"] = "summary";
    j["scenario"] = r.scenario;
    j["algorithm"] = model_kind_name(r.algorithm);
    j["n_ok"] = r.n_ok;
    j["n_failed"] = r.n_failed;
    put_metrics(j, r.median);
    j["oob_error"] = rate_json(r.median_oob_error);
    j["hybrid_weight"] = rate_json(r.median_hybrid_weight);
    j["train_seconds"] = r.median_train_seconds;
    out += j.dump() + "\n";
  }
  return out;
}

std::string evaluation_record(const std::string& model_path, ModelKind kind,
                              const std::string& part, const ConfusionCounts& counts,
                              const MetricsReport& report) {
  json j;
  j["record"] = "evaluation";
  j["model"] = model_path;
  j["algorithm"] = model_kind_name(kind);
  j["part"] = part;
  j["n"] = counts.total();
  j["tp"] = counts.tp;
  j["fp"] = counts.fp;
  j["tn"] = counts.tn;
  j["fn"] = counts.fn;
  put_metrics(j, report);
  return j.dump() + "\n";
}

}  // namespace prc
