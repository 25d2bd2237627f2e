#include "transgnn/metrics.hpp"

#include "transgnn/errors.hpp"

namespace transgnn {

Metrics metrics_from_confusion(const std::vector<std::vector<std::size_t>>& confusion) {
  const std::size_t c = confusion.size();
  Metrics m;
  m.per_class.resize(c);

  std::size_t total = 0, correct = 0;
  std::vector<std::size_t> pred_totals(c, 0);
  for (std::size_t t = 0; t < c; ++t) {
    if (confusion[t].size() != c) throw ShapeError("metrics_from_confusion: ragged matrix");
    for (std::size_t p = 0; p < c; ++p) {
      total += confusion[t][p];
      pred_totals[p] += confusion[t][p];
    }
    correct += confusion[t][t];
    m.per_class[t].support = 0;
    for (std::size_t p = 0; p < c; ++p) m.per_class[t].support += confusion[t][p];
  }
  if (total == 0) throw ShapeError("metrics_from_confusion: empty confusion matrix");

  for (std::size_t t = 0; t < c; ++t) {
    const std::size_t tp = confusion[t][t];
    const std::size_t support = m.per_class[t].support;
    const std::size_t predicted = pred_totals[t];
    auto& cm = m.per_class[t];
    cm.precision = predicted > 0 ? static_cast<double>(tp) / predicted : 0.0;
    cm.recall = support > 0 ? static_cast<double>(tp) / support : 0.0;
    cm.f1 = (cm.precision + cm.recall) > 0.0
                ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall)
                : 0.0;
    const double weight = static_cast<double>(support) / total;
    m.weighted_precision += weight * cm.precision;
    m.weighted_recall += weight * cm.recall;
    m.weighted_f1 += weight * cm.f1;
  }
  m.accuracy = static_cast<double>(correct) / total;
  m.evaluated = total;
  return m;
}

Metrics compute_metrics(std::span<const std::int32_t> labels, std::span<const std::int32_t> preds,
                        std::int32_t num_classes) {
  if (labels.size() != preds.size()) throw ShapeError("compute_metrics: size mismatch");
  if (labels.empty()) throw ShapeError("compute_metrics: nothing to evaluate");
  std::vector<std::vector<std::size_t>> confusion(
      num_classes, std::vector<std::size_t>(num_classes, 0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes || preds[i] < 0 || preds[i] >= num_classes) {
      throw ShapeError("compute_metrics: class id out of range");
    }
    ++confusion[labels[i]][preds[i]];
  }
  return metrics_from_confusion(confusion);
}

std::vector<std::int32_t> argmax_rows(const Matrix& logits) {
  std::vector<std::int32_t> out(logits.rows(), 0);
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    auto row = logits.row(i);
    std::size_t best = 0;
    for (std::size_t j = 1; j < row.size(); ++j) {
      if (row[j] > row[best]) best = j;
    }
    out[i] = static_cast<std::int32_t>(best);
  }
  return out;
}

}  // namespace transgnn
