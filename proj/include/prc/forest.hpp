#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "prc/tree.hpp"

namespace prc {

struct ForestConfig {
  std::size_t n_trees = 100;
  TreeConfig tree;  // n_features_per_split 0 means floor(sqrt(p)) in a forest
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency; never affects results

  /// Tree config with the forest default for N_f resolved against p.
  TreeConfig resolved_tree_config(std::size_t p) const;
};

struct BootstrapSample {
  std::vector<std::size_t> rows;  // n draws with replacement, in draw order
  std::vector<std::size_t> oob;   // rows never drawn, ascending
};

BootstrapSample bootstrap_sample(std::size_t n, Rng& rng);

/// Seed of the stream that draws tree j's bootstrap sample and then grows it.
std::uint64_t tree_stream_seed(std::uint64_t forest_seed, std::size_t j) noexcept;

struct ForestPrediction {
  int label = kNegative;
  double positive_votes = 0.0;  // fraction of trees voting +1
  double negative_votes = 0.0;
};

class Forest {
public:
  Forest() = default;
  Forest(std::vector<Tree> trees, std::vector<std::vector<std::size_t>> oob, ForestConfig config,
         std::size_t n_training_rows);

  const std::vector<Tree>& trees() const noexcept { return trees_; }
  const std::vector<std::vector<std::size_t>>& oob_sets() const noexcept { return oob_; }
  const ForestConfig& config() const noexcept { return config_; }
  std::size_t n_training_rows() const noexcept { return n_rows_; }
  std::size_t n_features() const noexcept;

  /// Hard majority vote; an exact tie goes to +1.
  ForestPrediction predict(std::span<const double> x) const;
  std::vector<int> predict_labels(const Dataset& data) const;

  bool operator==(const Forest& o) const;

private:
  std::vector<Tree> trees_;
  std::vector<std::vector<std::size_t>> oob_;
  ForestConfig config_;
  std::size_t n_rows_ = 0;
};

/// Bagged trees. Tree j depends only on (data, config, j), so the result is
/// identical for any thread count.
Forest build_forest(const Dataset& data, const ForestConfig& config);
Forest build_forest(const Dataset& data, ForestConfig config, Criterion criterion);

struct OobSummary {
  double error = 0.0;
  std::size_t n_scored = 0;    // rows with at least one out-of-bag tree
  std::size_t n_excluded = 0;  // rows that were in-bag for every tree
};

/// Misclassification rate of out-of-bag majority votes over rows with at least
/// one voting tree. Throws std::invalid_argument when `data` is not the
/// training set shape, std::domain_error when no row has a vote.
OobSummary oob_summary(const Forest& forest, const Dataset& data);
double oob_error(const Forest& forest, const Dataset& data);

/// a = (1 - e_prc) / ((1 - e_prc) + (1 - e_roc)). Throws std::domain_error
/// when both errors are 1.
HybridWeight weight_from_oob(double oob_error_prc, double oob_error_roc);

struct Calibration {
  HybridWeight weight;
  double oob_error_prc = 0.0;
  double oob_error_roc = 0.0;
};

/// Trains a PRC forest and a ROC forest with `config` (independent derived
/// seeds) and turns their OOB errors into the hybrid weight.
Calibration calibrate_weight(const Dataset& data, const ForestConfig& config);

/// Same, with the error of each auxiliary forest supplied by `estimate`.
using OobEstimator = std::function<double(const Forest&, const Dataset&)>;
Calibration calibrate_weight(const Dataset& data, const ForestConfig& config,
                             const OobEstimator& estimate);

}  // namespace prc
