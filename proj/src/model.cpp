#include "prc/model.hpp"

#include <stdexcept>
#include <string>

namespace prc {

namespace {

struct KindInfo {
  ModelKind kind;
  const char* name;
  Criterion criterion;
  bool forest;
};

constexpr KindInfo kKinds[] = {
    {ModelKind::PrcTree, "prc-tree", Criterion::PRC, false},
    {ModelKind::PrcRocTree, "prc-roc-tree", Criterion::PRC_ROC, false},
    {ModelKind::RocTree, "roc-tree", Criterion::ROC, false},
    {ModelKind::GiniTree, "gini-tree", Criterion::GINI, false},
    {ModelKind::PrcRf, "prc-rf", Criterion::PRC, true},
    {ModelKind::PrcRocRf, "prc-roc-rf", Criterion::PRC_ROC, true},
    {ModelKind::RocRf, "roc-rf", Criterion::ROC, true},
    {ModelKind::GiniRf, "gini-rf", Criterion::GINI, true},
};

const KindInfo& info(ModelKind k) {
  for (const auto& i : kKinds) {
    if (i.kind == k) return i;
  }
  throw std::logic_error("unknown model kind");
}

}  // namespace

const char* model_kind_name(ModelKind k) noexcept { return info(k).name; }

ModelKind parse_model_kind(std::string_view name) {
  for (const auto& i : kKinds) {
    if (name == i.name) return i.kind;
  }
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

const std::vector<ModelKind>& all_model_kinds() {
  static const std::vector<ModelKind> kinds = [] {
    std::vector<ModelKind> v;
    for (const auto& i : kKinds) v.push_back(i.kind);
    return v;
  }();
  return kinds;
}

bool is_forest(ModelKind k) noexcept { return info(k).forest; }
Criterion model_criterion(ModelKind k) noexcept { return info(k).criterion; }

int Model::predict(std::span<const double> x) const {
  if (forest) return forest->predict(x).label;
  if (tree) return tree->predict(x).label;
  throw std::logic_error("model has neither a tree nor a forest");
}

std::vector<int> Model::predict_labels(const Dataset& data) const {
  if (data.n_features() != n_features()) {
    throw std::invalid_argument("model expects " + std::to_string(n_features()) +
                                " features, dataset has " + std::to_string(data.n_features()));
  }
  std::vector<int> out(data.n_rows());
  for (std::size_t i = 0; i < data.n_rows(); ++i) out[i] = predict(data.row(i));
  return out;
}

Model train_model(ModelKind kind, const Dataset& train, const ModelConfig& config) {
  if (train.empty()) throw std::invalid_argument("train_model: empty training set");
  const std::size_t p = train.n_features();

  TreeConfig tc;
  tc.max_depth = config.max_depth;
  tc.min_leaf_size = config.min_leaf_size;
  tc.n_features_per_split = config.mtry;
  tc.criterion = model_criterion(kind);
  tc.seed = config.seed;

  ForestConfig fc;
  fc.n_trees = config.n_trees;
  fc.tree = tc;
  fc.seed = config.seed;
  fc.threads = config.threads;

  Model m;
  m.kind = kind;
  m.feature_names = train.feature_names();

  if (tc.criterion == Criterion::PRC_ROC) {
    m.calibration = calibrate_weight(train, fc);
    tc.weight = m.calibration->weight;
    fc.tree.weight = m.calibration->weight;
  }

  if (is_forest(kind)) {
    m.forest = build_forest(train, fc);
    m.oob = oob_summary(*m.forest, train);
  } else {
    tc.validate(p);
    m.tree = build_tree(train, tc);
  }
  return m;
}

}  // namespace prc
