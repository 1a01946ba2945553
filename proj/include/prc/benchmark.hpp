#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prc/data.hpp"
#include "prc/metrics.hpp"
#include "prc/model.hpp"

namespace prc {

// Streams derived from a run seed. The same seed gives the same scenario
// data, split and model in `train`, `evaluate` and `benchmark`.
inline constexpr std::uint64_t kSplitStream = 1;
inline constexpr std::uint64_t kModelStream = 2;

struct TrainTest {
  Dataset train;
  Dataset test;
};

/// Splits `data` with the split stream of `seed`.
TrainTest split_for_seed(const Dataset& data, std::uint64_t seed, double train_fraction,
                         bool stratified);
std::uint64_t model_seed_for(std::uint64_t seed) noexcept;

struct BenchmarkOptions {
  std::vector<int> scenarios;
  std::vector<ModelKind> algorithms;
  std::vector<std::uint64_t> seeds;
  ModelConfig model;  // seed is replaced per cell
  double split_fraction = 0.7;
  std::optional<std::size_t> n_samples;  // overrides the preset size
};

struct CellResult {
  int scenario = 0;
  ModelKind algorithm = ModelKind::PrcTree;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  ConfusionCounts counts;
  MetricsReport report;
  std::optional<double> oob_error;
  std::optional<double> hybrid_weight;
  double train_seconds = 0.0;
};

/// Per (scenario, algorithm) medians over the successful seeds.
struct SummaryRow {
  int scenario = 0;
  ModelKind algorithm = ModelKind::PrcTree;
  std::size_t n_ok = 0;
  std::size_t n_failed = 0;
  MetricsReport median;
  std::optional<double> median_oob_error;
  std::optional<double> median_hybrid_weight;
  double median_train_seconds = 0.0;
};

struct BenchmarkResult {
  std::vector<CellResult> cells;  // ordered by (scenario, algorithm, seed)
  std::vector<SummaryRow> rows;   // ordered by (scenario, algorithm)
  bool all_ok() const noexcept;
};

/// Median of the defined values; undefined when there are none.
Rate median(std::vector<Rate> values);

/// Runs the full cross product. A failing cell is recorded, never thrown.
/// Throws std::invalid_argument when any list is empty.
BenchmarkResult run_benchmark(const BenchmarkOptions& options,
                              const std::function<void(const CellResult&)>& on_cell = {});

/// Per-scenario tables: single trees, a dashed separator, then forests.
std::string render_benchmark(const BenchmarkResult& result, const BenchmarkOptions& options);

/// One JSON object per line: every cell record, then every summary record.
std::string benchmark_jsonl(const BenchmarkResult& result);

/// JSON line for a single evaluation.
std::string evaluation_record(const std::string& model_path, ModelKind kind,
                              const std::string& part, const ConfusionCounts& counts,
                              const MetricsReport& report);

}  // namespace prc
