#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prc/forest.hpp"
#include "prc/tree.hpp"

namespace prc {

enum class ModelKind { PrcTree, PrcRocTree, RocTree, GiniTree, PrcRf, PrcRocRf, RocRf, GiniRf };

const char* model_kind_name(ModelKind k) noexcept;
ModelKind parse_model_kind(std::string_view name);
const std::vector<ModelKind>& all_model_kinds();
bool is_forest(ModelKind k) noexcept;
Criterion model_criterion(ModelKind k) noexcept;

/// Training knobs shared by every model kind. Zero means "use the default":
/// all features for standalone trees, floor(sqrt(p)) for forests.
struct ModelConfig {
  std::size_t n_trees = 100;
  std::size_t mtry = 0;
  std::size_t max_depth = 10;
  std::size_t min_leaf_size = 5;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

/// Where the training rows came from, so `evaluate` can rebuild the split.
struct DataProvenance {
  std::string source;  // "scenario:<id>", "scenario-config:<path>" or "csv:<path>"
  std::uint64_t data_seed = 0;
  double split_fraction = 0.7;
  bool stratified = true;
  std::string label_column;
  std::string positive_value;
};

struct Model {
  ModelKind kind = ModelKind::PrcTree;
  std::vector<std::string> feature_names;
  std::optional<Tree> tree;
  std::optional<Forest> forest;
  std::optional<Calibration> calibration;  // PRC-ROC kinds
  std::optional<OobSummary> oob;           // forests
  DataProvenance provenance;

  std::size_t n_features() const noexcept { return feature_names.size(); }
  int predict(std::span<const double> x) const;
  std::vector<int> predict_labels(const Dataset& data) const;
};

/// Trains `kind` on `train`. PRC-ROC kinds first calibrate the hybrid weight
/// with two auxiliary forests built from the same config.
Model train_model(ModelKind kind, const Dataset& train, const ModelConfig& config);

// Serialization. The model file is a single JSON document whose trees are
// nested node objects; doubles are written in shortest round-trip form.
std::string model_to_json(const Model& m);
Model model_from_json(std::string_view text);
void save_model(const Model& m, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

std::string tree_to_json(const Tree& t);
Tree tree_from_json(std::string_view text);
std::string forest_to_json(const Forest& f);
Forest forest_from_json(std::string_view text);

}  // namespace prc
