#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prc/data.hpp"
#include "prc/rng.hpp"
#include "prc/metrics.hpp"
#include "prc/split.hpp"

namespace prc {

struct TreeConfig {
  std::size_t max_depth = 10;     // a root-only tree has depth 1
  std::size_t min_leaf_size = 5;
  std::size_t n_features_per_split = 0;  // 0 selects every feature
  Criterion criterion = Criterion::PRC;
  HybridWeight weight;  // used by Criterion::PRC_ROC only
  std::uint64_t seed = 0;

  /// Effective per-node feature count for p features. Throws when it exceeds p.
  std::size_t features_per_split(std::size_t p) const;
  void validate(std::size_t p) const;
};

/// Class fractions at a node.
struct NodeScore {
  double positive = 0.0;
  double negative = 0.0;
  bool operator==(const NodeScore&) const = default;
};

/// Fractions of +1 and -1 among `labels`. Throws std::logic_error when empty.
NodeScore node_score(std::span<const int> labels);

/// Majority class; an exact tie goes to +1.
int node_label(const NodeScore& s) noexcept;

struct TreeNode {
  NodeScore score;
  int label = kNegative;
  std::size_t n_samples = 0;
  std::size_t depth = 1;
  std::optional<SplitSpec> split;  // empty for leaves
  std::size_t left = 0;
  std::size_t right = 0;

  bool is_leaf() const noexcept { return !split.has_value(); }
  bool operator==(const TreeNode& o) const;
};

struct Prediction {
  int label = kNegative;
  NodeScore score;
};

/// Binary classification tree stored as a flat node array; node 0 is the root.
class Tree {
public:
  Tree() = default;
  /// Validates child links, depths, and feature indices.
  Tree(std::vector<TreeNode> nodes, std::size_t n_features);

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  std::size_t n_features() const noexcept { return n_features_; }
  std::size_t depth() const noexcept;
  std::size_t n_leaves() const noexcept;

  /// Index of the leaf that x routes to (x[feature] <= threshold goes left).
  std::size_t leaf_index(std::span<const double> x) const;
  Prediction predict(std::span<const double> x) const;
  std::vector<int> predict_labels(const Dataset& data) const;

  bool operator==(const Tree&) const = default;

private:
  std::vector<TreeNode> nodes_;
  std::size_t n_features_ = 0;
};

/// Grows a tree on `data` with a stream seeded from config.seed.
Tree build_tree(const Dataset& data, const TreeConfig& config);

/// Grows a tree on the given rows (repeats allowed), drawing per-node feature
/// subsets from `rng` in depth-first, left-before-right order.
Tree build_tree(const Dataset& data, std::span<const std::size_t> rows, const TreeConfig& config,
                Rng& rng);

/// Shorthand for all rows.
Tree build_tree(const Dataset& data, const TreeConfig& config, Rng& rng);

}  // namespace prc
