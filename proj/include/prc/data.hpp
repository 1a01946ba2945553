#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prc/rng.hpp"

namespace prc {

/// n x p matrix of finite reals with a {-1, +1} label per row.
/// Stored column-major so per-feature sweeps read contiguous memory.
class Dataset {
public:
  Dataset() = default;

  /// `columns[j]` holds feature j for every row. Throws std::invalid_argument
  /// on ragged columns, non-finite values, or labels outside {-1, +1}.
  Dataset(std::vector<std::vector<double>> columns, std::vector<int> labels,
          std::vector<std::string> feature_names = {});

  static Dataset from_rows(const std::vector<std::vector<double>>& rows, std::vector<int> labels,
                           std::vector<std::string> feature_names = {});

  std::size_t n_rows() const noexcept { return labels_.size(); }
  std::size_t n_features() const noexcept { return columns_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const double> column(std::size_t j) const { return columns_.at(j); }
  std::span<const int> labels() const noexcept { return labels_; }
  int label(std::size_t i) const { return labels_[i]; }
  double at(std::size_t i, std::size_t j) const { return columns_[j][i]; }
  std::vector<double> row(std::size_t i) const;
  const std::vector<std::string>& feature_names() const noexcept { return names_; }

  std::size_t count_positive() const noexcept;

  /// Rows in the given order; indices may repeat.
  Dataset subset(std::span<const std::size_t> rows) const;

  bool operator==(const Dataset&) const = default;

private:
  std::vector<std::vector<double>> columns_;
  std::vector<int> labels_;
  std::vector<std::string> names_;
};

/// Synthetic two-class Gaussian scenario with independent coordinates.
struct ScenarioSpec {
  std::string name;
  std::size_t n_samples = 5000;
  double minority_fraction = 0.3;
  std::size_t n_informative = 5;
  std::size_t n_noise = 0;
  double mean_minority = 3.0;
  double mean_majority = 0.0;
  double mean_noise = 1.0;
  double sd = 1.0;
  std::uint64_t rng_seed = 0;

  std::size_t n_minority() const;
  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
  /// Flat "key = value" rendering, one field per line.
  std::string describe() const;
};

/// Presets 1-5 of the simulation study. Throws std::out_of_range otherwise.
ScenarioSpec scenario_preset(int id, std::uint64_t seed);

/// Parses a flat key-value config ("key = value" or "key: value" per line,
/// '#' comments) into a ScenarioSpec. Unknown keys are an error.
ScenarioSpec parse_scenario_config(const std::string& text);
ScenarioSpec load_scenario_config(const std::filesystem::path& path);

Dataset generate_scenario(const ScenarioSpec& spec);

/// Reads a comma-separated file with a header row. The label column is
/// selected by name; cells equal to `positive_value` map to +1, all others
/// to -1. Remaining columns become features in file order.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const std::string& positive_value);
Dataset parse_csv(const std::string& text, const std::string& label_column,
                  const std::string& positive_value, const std::string& source = "<memory>");

/// Writes features in shortest round-trip form, then a label column
/// (+1 -> "1", -1 -> "0").
void write_csv(const Dataset& data, const std::filesystem::path& path,
               const std::string& label_column = "label");
std::string to_csv(const Dataset& data, const std::string& label_column = "label");

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Row indices (ascending) for a train/test partition. Stratified mode
/// splits each class separately, rounding train counts to nearest.
SplitIndices train_test_indices(std::span<const int> labels, double train_fraction,
                                bool stratified, Rng& rng);

std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double train_fraction,
                                             bool stratified, Rng& rng);

}  // namespace prc
