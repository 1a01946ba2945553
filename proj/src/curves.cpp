#include "prc/curves.hpp"

#include <algorithm>
#include <stdexcept>

#include "prc/metrics.hpp"

namespace prc {

namespace {

struct ClassTotals {
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

ClassTotals count_classes(std::span<const ValueLabel> sorted) {
  ClassTotals t;
  for (const auto& vl : sorted) {
    if (vl.label == kPositive) ++t.positives;
    else if (vl.label == kNegative) ++t.negatives;
    else throw std::invalid_argument("labels must be -1 or +1");
  }
  return t;
}

/// Calls fn(value, cumulative_count, cumulative_positives) once per unique
/// value, after all samples sharing that value have been absorbed.
template <typename Fn>
void sweep_unique(std::span<const ValueLabel> sorted, Fn&& fn) {
  std::size_t count = 0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    ++count;
    if (sorted[i].label == kPositive) ++pos;
    if (i + 1 == sorted.size() || sorted[i + 1].value != sorted[i].value) {
      fn(sorted[i].value, count, pos);
    }
  }
}

}  // namespace

double prc_baseline(std::span<const int> labels) {
  if (labels.empty()) throw std::invalid_argument("prc_baseline: empty labels");
  std::size_t pos = 0;
  for (int y : labels) {
    if (y == kPositive) ++pos;
  }
  return static_cast<double>(pos) / static_cast<double>(labels.size());
}

std::vector<ValueLabel> sort_pairs(std::span<const double> feature, std::span<const int> labels) {
  if (feature.size() != labels.size()) {
    throw std::invalid_argument("feature and labels differ in length");
  }
  std::vector<ValueLabel> pairs(feature.size());
  for (std::size_t i = 0; i < feature.size(); ++i) pairs[i] = {feature[i], labels[i]};
  std::sort(pairs.begin(), pairs.end(),
            [](const ValueLabel& a, const ValueLabel& b) { return a.value < b.value; });
  return pairs;
}

CurveSeries auprc_sorted(std::span<const ValueLabel> sorted) {
  if (sorted.empty()) throw std::invalid_argument("auprc: empty input");
  const ClassTotals totals = count_classes(sorted);
  if (totals.positives == 0) throw std::invalid_argument("auprc: no positive labels");

  const std::size_t n = sorted.size();
  const auto total_pos = static_cast<double>(totals.positives);

  CurveSeries s;
  s.kind = CurveKind::PRC;
  s.baseline = total_pos / static_cast<double>(n);

  double area = 0.0;
  sweep_unique(sorted, [&](double value, std::size_t count, std::size_t pos) {
    double r = static_cast<double>(pos) / total_pos;
    double p = static_cast<double>(pos) / static_cast<double>(count);
    std::uint8_t flip = 0;
    if (p < s.baseline) {
      // count < n here: the full set has precision equal to the baseline.
      r = 1.0 - r;
      p = static_cast<double>(totals.positives - pos) / static_cast<double>(n - count);
      flip = 1;
    }
    if (s.thresholds.empty()) {
      area = r * (1.0 + p) / 2.0;
    } else {
      area += (r - s.recall.back()) * (p + s.precision.back()) / 2.0;
    }
    s.thresholds.push_back(value);
    s.recall.push_back(r);
    s.precision.push_back(p);
    s.flipped.push_back(flip);
  });
  s.area = area;
  s.raw_area = area;
  return s;
}

CurveSeries auc_sorted(std::span<const ValueLabel> sorted) {
  if (sorted.empty()) throw std::invalid_argument("auc: empty input");
  const ClassTotals totals = count_classes(sorted);
  if (totals.positives == 0 || totals.negatives == 0) {
    throw std::invalid_argument("auc: both classes must be present");
  }
  const auto total_pos = static_cast<double>(totals.positives);
  const auto total_neg = static_cast<double>(totals.negatives);

  CurveSeries s;
  s.kind = CurveKind::ROC;
  s.baseline = total_pos / static_cast<double>(sorted.size());

  double area = 0.0;
  sweep_unique(sorted, [&](double value, std::size_t count, std::size_t pos) {
    const double t = static_cast<double>(pos) / total_pos;
    const double f = static_cast<double>(count - pos) / total_neg;
    if (s.thresholds.empty()) {
      area = t * f / 2.0;
    } else {
      area += (f - s.fpr.back()) * (t + s.tpr.back()) / 2.0;
    }
    s.thresholds.push_back(value);
    s.tpr.push_back(t);
    s.fpr.push_back(f);
  });
  s.raw_area = area;
  s.reversed = area < 0.5;
  s.area = s.reversed ? 1.0 - area : area;
  return s;
}

CurveSeries auprc(std::span<const double> feature, std::span<const int> labels) {
  const auto pairs = sort_pairs(feature, labels);
  return auprc_sorted(pairs);
}

CurveSeries auc(std::span<const double> feature, std::span<const int> labels) {
  const auto pairs = sort_pairs(feature, labels);
  return auc_sorted(pairs);
}

}  // namespace prc
