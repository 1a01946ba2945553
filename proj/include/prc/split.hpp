#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "prc/curves.hpp"
#include "prc/data.hpp"

namespace prc {

enum class Criterion { PRC, PRC_ROC, ROC, GINI };

const char* criterion_name(Criterion c) noexcept;
Criterion parse_criterion(std::string_view name);

/// Weight of AUPRC in the combined feature score a*AUPRC + (1-a)*AUC.
class HybridWeight {
public:
  HybridWeight() = default;
  explicit HybridWeight(double a) : a_(a) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("hybrid weight must lie in [0, 1]");
  }
  double value() const noexcept { return a_; }

private:
  double a_ = 0.5;
};

struct SplitSpec {
  std::size_t feature = 0;
  double threshold = 0.0;
  double criterion_score = 0.0;
  Criterion criterion = Criterion::PRC;
};

/// The rows of one tree node. Row indices refer to `data` and may repeat
/// (bootstrap samples).
struct NodeView {
  const Dataset& data;
  std::span<const std::size_t> rows;
};

/// Winner of a feature-selection pass together with the curves computed for
/// it, so threshold selection does not recompute them.
struct FeatureChoice {
  std::size_t feature = 0;
  double score = 0.0;
  CurveSeries prc;  // empty for AUC-only selection
  CurveSeries roc;  // empty for AUPRC-only selection
};

/// Feature with the largest AUPRC. Scores must exceed 0 and ties keep the
/// earliest feature in `features`; nullopt when no feature qualifies.
std::optional<FeatureChoice> select_feature_auprc(const NodeView& node,
                                                  std::span<const std::size_t> features);

/// Feature with the largest AUC (ROC tree).
std::optional<FeatureChoice> select_feature_auc(const NodeView& node,
                                                std::span<const std::size_t> features);

/// Feature with the largest a*AUPRC + (1-a)*AUC.
std::optional<FeatureChoice> select_feature_weighted(const NodeView& node,
                                                     std::span<const std::size_t> features,
                                                     HybridWeight w);

/// Which thresholds a selector may return. Splits excludes the largest
/// unique value, which sends every row left, unless it is the only one.
enum class Candidates { All, Splits };

/// Threshold whose (recall, precision) point has the largest F1, points taken
/// exactly as the PRC sweep produced them. Throws on an empty or non-PRC
/// series; nullopt when every F1 is 0.
std::optional<double> select_threshold_f1(const CurveSeries& prc,
                                         Candidates candidates = Candidates::All);

/// Specificity of the predictor described by PRC point j. Unflipped points
/// predict positive on x <= t, so specificity is 1 - fpr[j]; flipped points
/// describe the complement predictor x > t, whose specificity is fpr[j].
double point_specificity(const CurveSeries& prc, const CurveSeries& roc, std::size_t j);

/// Threshold maximizing F3(recall, precision, specificity) over aligned PRC
/// and ROC series. Throws std::logic_error on misaligned series.
std::optional<double> select_threshold_f3(const CurveSeries& prc, const CurveSeries& roc,
                                         Candidates candidates = Candidates::All);

/// Threshold maximizing the harmonic mean of sensitivity and specificity
/// (ROC tree). Points are read in the orientation that gave AUC >= 0.5.
std::optional<double> select_threshold_sens_spec(const CurveSeries& roc,
                                                Candidates candidates = Candidates::All);

struct NodePartition {
  std::vector<std::size_t> left;   // x[feature] <= threshold
  std::vector<std::size_t> right;  // x[feature] > threshold
};

/// Throws std::out_of_range on an invalid feature index.
NodePartition apply_split(const NodeView& node, std::size_t feature, double threshold);

/// Gini-impurity split (CART-style baseline). Candidate thresholds are the
/// unique values that leave at least `min_leaf` rows on both sides; ties keep
/// the earliest (feature, threshold).
std::optional<SplitSpec> best_gini_split(const NodeView& node,
                                         std::span<const std::size_t> features,
                                         std::size_t min_leaf);

/// (value, label) pairs for one feature over the node rows, sorted by value.
std::vector<ValueLabel> gather_sorted(const NodeView& node, std::size_t feature);

}  // namespace prc
