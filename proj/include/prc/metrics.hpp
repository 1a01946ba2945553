#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace prc {

/// Class labels. The positive (minority-of-interest) class is always +1.
inline constexpr int kPositive = 1;
inline constexpr int kNegative = -1;

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

/// A ratio that is undefined when its denominator is zero.
using Rate = std::optional<double>;

struct RateSet {
  Rate tpr;  // recall, sensitivity
  Rate fnr;
  Rate tnr;  // specificity
  Rate fpr;
  Rate ppv;  // precision
  Rate npv;
};

/// The five columns of a results table.
struct MetricsReport {
  Rate recall;
  Rate specificity;
  Rate precision;
  Rate accuracy;
  Rate f1;
};

/// Throws std::invalid_argument on length mismatch, empty input, or labels
/// outside {-1, +1}.
ConfusionCounts confusion_counts(std::span<const int> predictions, std::span<const int> labels);

RateSet rates(const ConfusionCounts& c) noexcept;

/// Harmonic mean of recall and precision; 0 when either is 0.
double f1(double recall, double precision);

/// Harmonic mean of recall, precision and specificity; 0 when any is 0.
double f3(double recall, double precision, double specificity);

MetricsReport metrics_report(const ConfusionCounts& c);
MetricsReport metrics_report(std::span<const int> predictions, std::span<const int> labels);

/// Fixed 4-decimal rendering; undefined renders as "NaN".
std::string format_rate(const Rate& r);

/// "Recall  Specificity  Precision  Accuracy  F1 Score" header and rows.
std::string report_header(std::size_t name_width);
std::string report_row(const std::string& name, const MetricsReport& m, std::size_t name_width);

}  // namespace prc
