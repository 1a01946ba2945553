#include "prc/split.hpp"

#include <algorithm>
#include <string>

#include "prc/metrics.hpp"

namespace prc {

const char* criterion_name(Criterion c) noexcept {
  switch (c) {
    case Criterion::PRC: return "prc";
    case Criterion::PRC_ROC: return "prc-roc";
    case Criterion::ROC: return "roc";
    case Criterion::GINI: return "gini";
  }
  return "?";
}

Criterion parse_criterion(std::string_view name) {
  if (name == "prc") return Criterion::PRC;
  if (name == "prc-roc") return Criterion::PRC_ROC;
  if (name == "roc") return Criterion::ROC;
  if (name == "gini") return Criterion::GINI;
  throw std::invalid_argument("unknown criterion '" + std::string(name) + "'");
}

std::vector<ValueLabel> gather_sorted(const NodeView& node, std::size_t feature) {
  const auto col = node.data.column(feature);
  const auto labels = node.data.labels();
  std::vector<ValueLabel> pairs(node.rows.size());
  for (std::size_t k = 0; k < node.rows.size(); ++k) {
    pairs[k] = {col[node.rows[k]], labels[node.rows[k]]};
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const ValueLabel& a, const ValueLabel& b) { return a.value < b.value; });
  return pairs;
}

namespace {

std::size_t candidate_count(const CurveSeries& s, Candidates c) noexcept {
  return c == Candidates::Splits && s.size() > 1 ? s.size() - 1 : s.size();
}

void check_features(const NodeView& node, std::span<const std::size_t> features) {
  if (features.empty()) throw std::invalid_argument("feature subset is empty");
  for (auto f : features) {
    if (f >= node.data.n_features()) throw std::out_of_range("feature index out of range");
  }
}

/// Shared max loop: running maximum starts at 0, strict '>' keeps the first.
template <typename ScoreFn>
std::optional<FeatureChoice> select_max(const NodeView& node,
                                        std::span<const std::size_t> features, ScoreFn&& score) {
  check_features(node, features);
  std::optional<FeatureChoice> best;
  double best_score = 0.0;
  for (auto f : features) {
    FeatureChoice candidate = score(f);
    if (candidate.score > best_score) {
      best_score = candidate.score;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace

std::optional<FeatureChoice> select_feature_auprc(const NodeView& node,
                                                  std::span<const std::size_t> features) {
  return select_max(node, features, [&](std::size_t f) {
    FeatureChoice c;
    c.feature = f;
    c.prc = auprc_sorted(gather_sorted(node, f));
    c.score = c.prc.area;
    return c;
  });
}

std::optional<FeatureChoice> select_feature_auc(const NodeView& node,
                                                std::span<const std::size_t> features) {
  return select_max(node, features, [&](std::size_t f) {
    FeatureChoice c;
    c.feature = f;
    c.roc = auc_sorted(gather_sorted(node, f));
    c.score = c.roc.area;
    return c;
  });
}

std::optional<FeatureChoice> select_feature_weighted(const NodeView& node,
                                                     std::span<const std::size_t> features,
                                                     HybridWeight w) {
  const double a = w.value();
  return select_max(node, features, [&](std::size_t f) {
    const auto pairs = gather_sorted(node, f);
    FeatureChoice c;
    c.feature = f;
    c.prc = auprc_sorted(pairs);
    c.roc = auc_sorted(pairs);
    c.score = a * c.prc.area + (1.0 - a) * c.roc.area;
    return c;
  });
}

std::optional<double> select_threshold_f1(const CurveSeries& prc, Candidates candidates) {
  if (prc.kind != CurveKind::PRC) throw std::invalid_argument("select_threshold_f1: PRC series required");
  if (prc.size() == 0) throw std::invalid_argument("select_threshold_f1: empty series");
  std::optional<double> best;
  double best_f1 = 0.0;
  for (std::size_t j = 0; j < candidate_count(prc, candidates); ++j) {
    const double score = f1(prc.recall[j], prc.precision[j]);
    if (score > best_f1) {
      best_f1 = score;
      best = prc.thresholds[j];
    }
  }
  return best;
}

double point_specificity(const CurveSeries& prc, const CurveSeries& roc, std::size_t j) {
  return prc.flipped[j] ? roc.fpr[j] : 1.0 - roc.fpr[j];
}

std::optional<double> select_threshold_f3(const CurveSeries& prc, const CurveSeries& roc,
                                         Candidates candidates) {
  if (prc.kind != CurveKind::PRC || roc.kind != CurveKind::ROC) {
    throw std::logic_error("select_threshold_f3: expected a PRC and a ROC series");
  }
  if (prc.thresholds != roc.thresholds) {
    throw std::logic_error("select_threshold_f3: series are not aligned on the same thresholds");
  }
  if (prc.size() == 0) throw std::invalid_argument("select_threshold_f3: empty series");
  std::optional<double> best;
  double best_f3 = 0.0;
  for (std::size_t j = 0; j < candidate_count(prc, candidates); ++j) {
    const double score = f3(prc.recall[j], prc.precision[j], point_specificity(prc, roc, j));
    if (score > best_f3) {
      best_f3 = score;
      best = prc.thresholds[j];
    }
  }
  return best;
}

std::optional<double> select_threshold_sens_spec(const CurveSeries& roc, Candidates candidates) {
  if (roc.kind != CurveKind::ROC) {
    throw std::invalid_argument("select_threshold_sens_spec: ROC series required");
  }
  if (roc.size() == 0) throw std::invalid_argument("select_threshold_sens_spec: empty series");
  std::optional<double> best;
  double best_hm = 0.0;
  for (std::size_t j = 0; j < candidate_count(roc, candidates); ++j) {
    const double sens = roc.reversed ? 1.0 - roc.tpr[j] : roc.tpr[j];
    const double spec = roc.reversed ? roc.fpr[j] : 1.0 - roc.fpr[j];
    const double score = f1(sens, spec);
    if (score > best_hm) {
      best_hm = score;
      best = roc.thresholds[j];
    }
  }
  return best;
}

NodePartition apply_split(const NodeView& node, std::size_t feature, double threshold) {
  if (feature >= node.data.n_features()) {
    throw std::out_of_range("apply_split: feature " + std::to_string(feature) + " out of range");
  }
  const auto col = node.data.column(feature);
  NodePartition part;
  for (auto r : node.rows) {
    (col[r] <= threshold ? part.left : part.right).push_back(r);
  }
  return part;
}

std::optional<SplitSpec> best_gini_split(const NodeView& node,
                                         std::span<const std::size_t> features,
                                         std::size_t min_leaf) {
  check_features(node, features);
  const std::size_t n = node.rows.size();
  if (n == 0) return std::nullopt;
  const auto labels = node.data.labels();
  std::size_t total_pos = 0;
  for (auto r : node.rows) {
    if (labels[r] == kPositive) ++total_pos;
  }
  auto gini = [](double pos, double count) {
    if (count == 0.0) return 0.0;
    const double q = pos / count;
    return 2.0 * q * (1.0 - q);
  };
  const double nd = static_cast<double>(n);
  const double parent = gini(static_cast<double>(total_pos), nd);
  min_leaf = std::max<std::size_t>(min_leaf, 1);

  std::optional<SplitSpec> best;
  double best_gain = 0.0;
  for (auto f : features) {
    const auto pairs = gather_sorted(node, f);
    std::size_t count = 0, pos = 0;
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
      ++count;
      if (pairs[i].label == kPositive) ++pos;
      if (pairs[i + 1].value == pairs[i].value) continue;
      if (count < min_leaf || n - count < min_leaf) continue;
      const double left_n = static_cast<double>(count);
      const double right_n = nd - left_n;
      const double child = (left_n * gini(static_cast<double>(pos), left_n) +
                            right_n * gini(static_cast<double>(total_pos - pos), right_n)) / nd;
      const double gain = parent - child;
      if (gain > best_gain) {
        best_gain = gain;
        best = SplitSpec{f, pairs[i].value, gain, Criterion::GINI};
      }
    }
  }
  return best;
}

}  // namespace prc
