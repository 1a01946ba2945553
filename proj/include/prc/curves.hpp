#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace prc {

enum class CurveKind { PRC, ROC };

/// Threshold sweep over one feature. Entry j describes the candidate set
/// {x : x <= thresholds[j]} with thresholds the sorted unique feature values.
///
/// PRC series fill recall/precision/flipped; ROC series fill tpr/fpr. Each
/// populated array has one entry per threshold.
struct CurveSeries {
  CurveKind kind = CurveKind::PRC;
  std::vector<double> thresholds;

  // PRC. When the precision of the candidate set falls below the baseline the
  // point is replaced by the recall/precision of the complement set and
  // flipped[j] is set.
  std::vector<double> recall;
  std::vector<double> precision;
  std::vector<std::uint8_t> flipped;

  // ROC: cumulative rates of the candidate set.
  std::vector<double> tpr;
  std::vector<double> fpr;

  double baseline = 0.0;  // positive prevalence
  double area = 0.0;      // after the AUC < 0.5 flip for ROC
  double raw_area = 0.0;  // trapezoid sum before any whole-curve flip
  bool reversed = false;  // ROC only: raw_area < 0.5 and area = 1 - raw_area

  std::size_t size() const noexcept { return thresholds.size(); }
};

/// Fraction of labels equal to +1. Throws on empty input.
double prc_baseline(std::span<const int> labels);

/// Precision-recall sweep with per-point complement flip and trapezoidal
/// area. Requires at least one positive label. O(n log n).
CurveSeries auprc(std::span<const double> feature, std::span<const int> labels);

/// ROC sweep with trapezoidal area, flipped to 1 - area when below 0.5.
/// Requires both classes. O(n log n).
CurveSeries auc(std::span<const double> feature, std::span<const int> labels);

/// Same as above for pairs already sorted ascending by value.
struct ValueLabel {
  double value;
  int label;
};
CurveSeries auprc_sorted(std::span<const ValueLabel> sorted);
CurveSeries auc_sorted(std::span<const ValueLabel> sorted);

/// Sorts (value, label) pairs ascending by value.
std::vector<ValueLabel> sort_pairs(std::span<const double> feature, std::span<const int> labels);

}  // namespace prc
