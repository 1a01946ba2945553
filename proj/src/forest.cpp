#include "prc/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace prc {

namespace {

// Stream labels for the two calibration forests.
constexpr std::uint64_t kCalibrationPrcStream = 0x5052430000000001ULL;
constexpr std::uint64_t kCalibrationRocStream = 0x524F430000000002ULL;

}  // namespace

TreeConfig ForestConfig::resolved_tree_config(std::size_t p) const {
  TreeConfig t = tree;
  if (t.n_features_per_split == 0) {
    t.n_features_per_split =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(p)))));
  }
  return t;
}

BootstrapSample bootstrap_sample(std::size_t n, Rng& rng) {
  BootstrapSample b;
  b.rows.resize(n);
  std::vector<char> drawn(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    b.rows[i] = rng.uniform_index(n);
    drawn[b.rows[i]] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!drawn[i]) b.oob.push_back(i);
  }
  return b;
}

std::uint64_t tree_stream_seed(std::uint64_t forest_seed, std::size_t j) noexcept {
  return derive_seed(forest_seed, static_cast<std::uint64_t>(j));
}

Forest::Forest(std::vector<Tree> trees, std::vector<std::vector<std::size_t>> oob,
               ForestConfig config, std::size_t n_training_rows)
    : trees_(std::move(trees)), oob_(std::move(oob)), config_(std::move(config)),
      n_rows_(n_training_rows) {
  if (trees_.empty()) throw std::invalid_argument("Forest: no trees");
  if (oob_.size() != trees_.size()) {
    throw std::invalid_argument("Forest: one out-of-bag set per tree required");
  }
  const std::size_t p = trees_.front().n_features();
  for (const auto& t : trees_) {
    if (t.n_features() != p) throw std::invalid_argument("Forest: trees disagree on feature count");
  }
  for (const auto& s : oob_) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] >= n_rows_ || (k > 0 && s[k] <= s[k - 1])) {
        throw std::invalid_argument("Forest: out-of-bag set is not an ascending set of row indices");
      }
    }
  }
}

std::size_t Forest::n_features() const noexcept {
  return trees_.empty() ? 0 : trees_.front().n_features();
}

ForestPrediction Forest::predict(std::span<const double> x) const {
  std::size_t pos = 0;
  for (const auto& t : trees_) {
    if (t.predict(x).label == kPositive) ++pos;
  }
  const std::size_t neg = trees_.size() - pos;
  ForestPrediction out;
  out.label = pos >= neg ? kPositive : kNegative;
  out.positive_votes = static_cast<double>(pos) / static_cast<double>(trees_.size());
  out.negative_votes = static_cast<double>(neg) / static_cast<double>(trees_.size());
  return out;
}

std::vector<int> Forest::predict_labels(const Dataset& data) const {
  std::vector<int> out(data.n_rows());
  for (std::size_t i = 0; i < data.n_rows(); ++i) out[i] = predict(data.row(i)).label;
  return out;
}

bool Forest::operator==(const Forest& o) const {
  return trees_ == o.trees_ && oob_ == o.oob_ && n_rows_ == o.n_rows_ &&
         config_.n_trees == o.config_.n_trees && config_.seed == o.config_.seed;
}

Forest build_forest(const Dataset& data, const ForestConfig& config) {
  if (data.empty()) throw std::invalid_argument("build_forest: empty dataset");
  if (config.n_trees < 1) throw std::invalid_argument("build_forest: n_trees must be at least 1");
  const TreeConfig tree_config = config.resolved_tree_config(data.n_features());
  tree_config.validate(data.n_features());

  const std::size_t n = data.n_rows();
  std::vector<Tree> trees(config.n_trees);
  std::vector<std::vector<std::size_t>> oob(config.n_trees);

  auto grow = [&](std::size_t j) {
    Rng rng(tree_stream_seed(config.seed, j));
    BootstrapSample b = bootstrap_sample(n, rng);
    trees[j] = build_tree(data, b.rows, tree_config, rng);
    oob[j] = std::move(b.oob);
  };

  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(config.n_trees)));
  if (threads == 1) {
    for (std::size_t j = 0; j < config.n_trees; ++j) grow(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
          for (std::size_t j = next++; j < config.n_trees; j = next++) {
            try {
              grow(j);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  ForestConfig stored = config;
  stored.tree = tree_config;
  return Forest(std::move(trees), std::move(oob), std::move(stored), n);
}

Forest build_forest(const Dataset& data, ForestConfig config, Criterion criterion) {
  config.tree.criterion = criterion;
  return build_forest(data, config);
}

OobSummary oob_summary(const Forest& forest, const Dataset& data) {
  if (data.n_rows() != forest.n_training_rows() || data.n_features() != forest.n_features()) {
    throw std::invalid_argument("oob_error: dataset does not match the forest's training data (" +
                                std::to_string(data.n_rows()) + " x " +
                                std::to_string(data.n_features()) + " vs " +
                                std::to_string(forest.n_training_rows()) + " x " +
                                std::to_string(forest.n_features()) + ")");
  }
  const std::size_t n = data.n_rows();
  std::vector<std::size_t> pos_votes(n, 0), all_votes(n, 0);
  const auto& trees = forest.trees();
  for (std::size_t j = 0; j < trees.size(); ++j) {
    for (auto i : forest.oob_sets()[j]) {
      ++all_votes[i];
      if (trees[j].predict(data.row(i)).label == kPositive) ++pos_votes[i];
    }
  }
  OobSummary s;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (all_votes[i] == 0) {
      ++s.n_excluded;
      continue;
    }
    ++s.n_scored;
    const int vote = 2 * pos_votes[i] >= all_votes[i] ? kPositive : kNegative;
    if (vote != data.label(i)) ++wrong;
  }
  if (s.n_scored == 0) throw std::domain_error("oob_error: no row has an out-of-bag vote");
  s.error = static_cast<double>(wrong) / static_cast<double>(s.n_scored);
  return s;
}

double oob_error(const Forest& forest, const Dataset& data) {
  return oob_summary(forest, data).error;
}

HybridWeight weight_from_oob(double oob_error_prc, double oob_error_roc) {
  auto check = [](double e) {
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("OOB error must lie in [0, 1]");
  };
  check(oob_error_prc);
  check(oob_error_roc);
  const double acc_prc = 1.0 - oob_error_prc;
  const double acc_roc = 1.0 - oob_error_roc;
  if (acc_prc + acc_roc == 0.0) {
    throw std::domain_error("hybrid weight undefined: both OOB errors are 1");
  }
  return HybridWeight(acc_prc / (acc_prc + acc_roc));
}

Calibration calibrate_weight(const Dataset& data, const ForestConfig& config) {
  return calibrate_weight(data, config,
                          [](const Forest& f, const Dataset& d) { return oob_error(f, d); });
}

Calibration calibrate_weight(const Dataset& data, const ForestConfig& config,
                             const OobEstimator& estimate) {
  ForestConfig prc_cfg = config;
  prc_cfg.tree.criterion = Criterion::PRC;
  prc_cfg.seed = derive_seed(config.seed, kCalibrationPrcStream);
  ForestConfig roc_cfg = config;
  roc_cfg.tree.criterion = Criterion::ROC;
  roc_cfg.seed = derive_seed(config.seed, kCalibrationRocStream);

  const Forest prc_forest = build_forest(data, prc_cfg);
  const Forest roc_forest = build_forest(data, roc_cfg);
  Calibration c;
  c.oob_error_prc = estimate(prc_forest, data);
  c.oob_error_roc = estimate(roc_forest, data);
  c.weight = weight_from_oob(c.oob_error_prc, c.oob_error_roc);
  return c;
}

}  // namespace prc
