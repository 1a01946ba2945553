#include "prc/tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace prc {

std::size_t TreeConfig::features_per_split(std::size_t p) const {
  const std::size_t k = n_features_per_split == 0 ? p : n_features_per_split;
  if (k > p) {
    throw std::invalid_argument("n_features_per_split (" + std::to_string(k) +
                                ") exceeds the feature count (" + std::to_string(p) + ")");
  }
  return k;
}

void TreeConfig::validate(std::size_t p) const {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
  if (min_leaf_size < 1) throw std::invalid_argument("min_leaf_size must be at least 1");
  if (p == 0) throw std::invalid_argument("dataset has no features");
  features_per_split(p);
}

NodeScore node_score(std::span<const int> labels) {
  if (labels.empty()) throw std::logic_error("node_score: empty node");
  std::size_t pos = 0;
  for (int y : labels) {
    if (y == kPositive) ++pos;
  }
  const auto n = static_cast<double>(labels.size());
  return {static_cast<double>(pos) / n, static_cast<double>(labels.size() - pos) / n};
}

int node_label(const NodeScore& s) noexcept {
  return s.positive >= s.negative ? kPositive : kNegative;
}

bool TreeNode::operator==(const TreeNode& o) const {
  if (score != o.score || label != o.label || n_samples != o.n_samples || depth != o.depth ||
      split.has_value() != o.split.has_value()) {
    return false;
  }
  if (!split) return true;
  return split->feature == o.split->feature && split->threshold == o.split->threshold &&
         split->criterion_score == o.split->criterion_score &&
         split->criterion == o.split->criterion && left == o.left && right == o.right;
}

Tree::Tree(std::vector<TreeNode> nodes, std::size_t n_features)
    : nodes_(std::move(nodes)), n_features_(n_features) {
  if (nodes_.empty()) throw std::invalid_argument("Tree: no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& nd = nodes_[i];
    if (nd.label != kPositive && nd.label != kNegative) {
      throw std::invalid_argument("Tree: node " + std::to_string(i) + " has an invalid label");
    }
    if (nd.is_leaf()) continue;
    if (nd.split->feature >= n_features_) {
      throw std::invalid_argument("Tree: node " + std::to_string(i) + " splits on feature " +
                                  std::to_string(nd.split->feature) + " of " +
                                  std::to_string(n_features_));
    }
    // Children always follow their parent, which rules out cycles.
    if (nd.left <= i || nd.right <= i || nd.left >= nodes_.size() || nd.right >= nodes_.size() ||
        nd.left == nd.right) {
      throw std::invalid_argument("Tree: node " + std::to_string(i) + " has invalid children");
    }
  }
}

std::size_t Tree::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& nd : nodes_) d = std::max(d, nd.depth);
  return d;
}

std::size_t Tree::n_leaves() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& nd) { return nd.is_leaf(); }));
}

std::size_t Tree::leaf_index(std::span<const double> x) const {
  if (x.size() != n_features_) {
    throw std::invalid_argument("predict: expected " + std::to_string(n_features_) +
                                " features, got " + std::to_string(x.size()));
  }
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const auto& s = *nodes_[i].split;
    i = x[s.feature] <= s.threshold ? nodes_[i].left : nodes_[i].right;
  }
  return i;
}

Prediction Tree::predict(std::span<const double> x) const {
  const auto& leaf = nodes_[leaf_index(x)];
  return {leaf.label, leaf.score};
}

std::vector<int> Tree::predict_labels(const Dataset& data) const {
  std::vector<int> out(data.n_rows());
  for (std::size_t i = 0; i < data.n_rows(); ++i) out[i] = predict(data.row(i)).label;
  return out;
}

namespace {

class TreeBuilder {
public:
  TreeBuilder(const Dataset& data, const TreeConfig& config, Rng& rng)
      : data_(data), config_(config), rng_(rng),
        n_candidates_(config.features_per_split(data.n_features())) {
    all_features_.resize(data.n_features());
    std::iota(all_features_.begin(), all_features_.end(), std::size_t{0});
  }

  std::vector<TreeNode> run(std::vector<std::size_t> rows) {
    grow(std::move(rows), 1);
    return std::move(nodes_);
  }

private:
  std::size_t grow(std::vector<std::size_t> rows, std::size_t depth) {
    const std::size_t index = nodes_.size();
    nodes_.emplace_back();

    std::size_t pos = 0;
    for (auto r : rows) {
      if (data_.label(r) == kPositive) ++pos;
    }
    const std::size_t n = rows.size();
    TreeNode node;
    node.n_samples = n;
    node.depth = depth;
    node.score = {static_cast<double>(pos) / static_cast<double>(n),
                  static_cast<double>(n - pos) / static_cast<double>(n)};
    node.label = node_label(node.score);

    std::optional<NodePartition> part;
    std::optional<SplitSpec> spec;
    const bool stop = pos == 0 || pos == n || depth >= config_.max_depth ||
                      n < 2 * config_.min_leaf_size;
    if (!stop) {
      spec = choose_split(rows);
      if (spec) {
        part = apply_split(NodeView{data_, rows}, spec->feature, spec->threshold);
        if (part->left.size() < config_.min_leaf_size ||
            part->right.size() < config_.min_leaf_size) {
          spec.reset();
          part.reset();
        }
      }
    }

    if (spec) {
      node.split = spec;
      rows.clear();
      rows.shrink_to_fit();
      node.left = grow(std::move(part->left), depth + 1);
      node.right = grow(std::move(part->right), depth + 1);
    }
    nodes_[index] = node;
    return index;
  }

  std::optional<SplitSpec> choose_split(std::span<const std::size_t> rows) {
    std::vector<std::size_t> sampled;
    std::span<const std::size_t> features = all_features_;
    if (n_candidates_ < all_features_.size()) {
      sampled = rng_.sample_without_replacement(all_features_.size(), n_candidates_);
      features = sampled;
    }
    const NodeView node{data_, rows};
    const Criterion c = config_.criterion;

    if (c == Criterion::GINI) return best_gini_split(node, features, config_.min_leaf_size);

    std::optional<FeatureChoice> choice;
    std::optional<double> threshold;
    switch (c) {
      case Criterion::PRC:
        choice = select_feature_auprc(node, features);
        if (choice) threshold = select_threshold_f1(choice->prc, Candidates::Splits);
        break;
      case Criterion::PRC_ROC:
        choice = select_feature_weighted(node, features, config_.weight);
        if (choice) threshold = select_threshold_f3(choice->prc, choice->roc, Candidates::Splits);
        break;
      case Criterion::ROC:
        choice = select_feature_auc(node, features);
        if (choice) threshold = select_threshold_sens_spec(choice->roc, Candidates::Splits);
        break;
      case Criterion::GINI:
        break;
    }
    if (!choice || !threshold) return std::nullopt;
    return SplitSpec{choice->feature, *threshold, choice->score, c};
  }

  const Dataset& data_;
  const TreeConfig& config_;
  Rng& rng_;
  std::size_t n_candidates_;
  std::vector<std::size_t> all_features_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

Tree build_tree(const Dataset& data, std::span<const std::size_t> rows, const TreeConfig& config,
                Rng& rng) {
  if (data.empty() || rows.empty()) throw std::invalid_argument("build_tree: empty dataset");
  config.validate(data.n_features());
  for (auto r : rows) {
    if (r >= data.n_rows()) throw std::out_of_range("build_tree: row index out of range");
  }
  TreeBuilder builder(data, config, rng);
  auto nodes = builder.run(std::vector<std::size_t>(rows.begin(), rows.end()));
  return Tree(std::move(nodes), data.n_features());
}

Tree build_tree(const Dataset& data, const TreeConfig& config, Rng& rng) {
  std::vector<std::size_t> rows(data.n_rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return build_tree(data, rows, config, rng);
}

Tree build_tree(const Dataset& data, const TreeConfig& config) {
  Rng rng(config.seed);
  return build_tree(data, config, rng);
}

}  // namespace prc
