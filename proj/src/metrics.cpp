#include "prc/metrics.hpp"

#include <cstdio>
#include <stdexcept>

namespace prc {

namespace {

Rate ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

void check_label(int v, const char* what) {
  if (v != kPositive && v != kNegative) {
    throw std::invalid_argument(std::string(what) + " must be -1 or +1");
  }
}

}  // namespace

ConfusionCounts confusion_counts(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size()) {
    throw std::invalid_argument("confusion_counts: predictions and labels differ in length");
  }
  if (labels.empty()) {
    throw std::invalid_argument("confusion_counts: empty input");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    check_label(predictions[i], "prediction");
    check_label(labels[i], "label");
    const bool pred_pos = predictions[i] == kPositive;
    const bool is_pos = labels[i] == kPositive;
    if (pred_pos && is_pos) ++c.tp;
    else if (pred_pos) ++c.fp;
    else if (is_pos) ++c.fn;
    else ++c.tn;
  }
  return c;
}

RateSet rates(const ConfusionCounts& c) noexcept {
  RateSet r;
  r.tpr = ratio(c.tp, c.tp + c.fn);
  r.fnr = ratio(c.fn, c.tp + c.fn);
  r.tnr = ratio(c.tn, c.tn + c.fp);
  r.fpr = ratio(c.fp, c.tn + c.fp);
  r.ppv = ratio(c.tp, c.tp + c.fp);
  r.npv = ratio(c.tn, c.tn + c.fn);
  return r;
}

double f1(double recall, double precision) {
  check_unit(recall, "recall");
  check_unit(precision, "precision");
  if (recall == 0.0 || precision == 0.0) return 0.0;
  return 2.0 / (1.0 / recall + 1.0 / precision);
}

double f3(double recall, double precision, double specificity) {
  check_unit(recall, "recall");
  check_unit(precision, "precision");
  check_unit(specificity, "specificity");
  if (recall == 0.0 || precision == 0.0 || specificity == 0.0) return 0.0;
  return 3.0 / (1.0 / recall + 1.0 / precision + 1.0 / specificity);
}

MetricsReport metrics_report(const ConfusionCounts& c) {
  const RateSet r = rates(c);
  MetricsReport m;
  m.recall = r.tpr;
  m.specificity = r.tnr;
  m.precision = r.ppv;
  m.accuracy = ratio(c.tp + c.tn, c.total());
  // A zero component fixes F1 at 0 even when the other one is undefined
  // (e.g. no predicted positives: recall 0, precision undefined).
  if ((m.recall && *m.recall == 0.0) || (m.precision && *m.precision == 0.0)) {
    m.f1 = 0.0;
  } else if (m.recall && m.precision) {
    m.f1 = f1(*m.recall, *m.precision);
  }
  return m;
}

MetricsReport metrics_report(std::span<const int> predictions, std::span<const int> labels) {
  return metrics_report(confusion_counts(predictions, labels));
}

std::string format_rate(const Rate& r) {
  if (!r) return "NaN";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *r);
  return buf;
}

std::string report_header(std::size_t name_width) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-*s  %8s  %11s  %9s  %8s  %8s", static_cast<int>(name_width),
                "Algorithm", "Recall", "Specificity", "Precision", "Accuracy", "F1 Score");
  return buf;
}

std::string report_row(const std::string& name, const MetricsReport& m, std::size_t name_width) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-*s  %8s  %11s  %9s  %8s  %8s", static_cast<int>(name_width),
                name.c_str(), format_rate(m.recall).c_str(), format_rate(m.specificity).c_str(),
                format_rate(m.precision).c_str(), format_rate(m.accuracy).c_str(),
                format_rate(m.f1).c_str());
  return buf;
}

}  // namespace prc
