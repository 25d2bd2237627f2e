#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "transgnn/matrix.hpp"

namespace transgnn {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

// Accuracy plus support-weighted precision/recall/F1. Weighted recall equals
// accuracy by construction, which the tests use as a consistency check.
struct Metrics {
  double accuracy = 0.0;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
  std::vector<ClassMetrics> per_class;
  std::size_t evaluated = 0;
};

// row-major confusion[true][pred]
Metrics metrics_from_confusion(const std::vector<std::vector<std::size_t>>& confusion);

Metrics compute_metrics(std::span<const std::int32_t> labels, std::span<const std::int32_t> preds,
                        std::int32_t num_classes);

// per-row argmax with ties broken toward the lowest class id
std::vector<std::int32_t> argmax_rows(const Matrix& logits);

}  // namespace transgnn
