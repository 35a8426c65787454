// Copyright 2026 The balmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "balmix/common.hpp"

namespace balmix {

/// K x K counts; rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int k);
  ConfusionMatrix(int k, std::vector<std::int64_t> row_major);

  static ConfusionMatrix from_predictions(std::span<const Label> truth,
                                          std::span<const Label> predicted, int k);

  void add(Label truth, Label predicted, std::int64_t n = 1);

  int num_classes() const noexcept { return k_; }
  std::int64_t at(int truth, int predicted) const {
    return counts_[static_cast<std::size_t>(truth) * static_cast<std::size_t>(k_) +
                   static_cast<std::size_t>(predicted)];
  }
  std::int64_t total() const noexcept { return total_; }
  std::int64_t trace() const noexcept;
  std::vector<std::int64_t> row_sums() const;
  std::vector<std::int64_t> col_sums() const;

 private:
  int k_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

struct PredictionSet {
  std::vector<Label> truth;
  std::vector<Label> predicted;
  int num_classes = 0;
  std::vector<std::vector<double>> scores;  // optional per-class scores

  ConfusionMatrix confusion() const {
    return ConfusionMatrix::from_predictions(truth, predicted, num_classes);
  }
};

// A metric value plus a flag raised when the definition's denominator
// vanished and the value was set to 0 by convention.
struct MetricResult {
  double value = 0.0;
  bool degenerate = false;
};

MetricResult quad_kappa(const ConfusionMatrix& cm);
MetricResult mcc(const ConfusionMatrix& cm);

/// Kendall tau-b between true and predicted labels.
MetricResult kendall_tau(const PredictionSet& p);
MetricResult kendall_tau(const ConfusionMatrix& cm);

/// Mean per-class recall. Throws if a true class has no examples.
double balanced_accuracy(const ConfusionMatrix& cm);

/// Unweighted mean of per-class F1; a class with P + R = 0 contributes 0.
double macro_f1(const ConfusionMatrix& cm);

enum class Metric { quad_kappa, mcc, kendall_tau, balanced_accuracy, macro_f1 };

inline constexpr Metric kAllMetrics[] = {Metric::quad_kappa, Metric::mcc, Metric::kendall_tau,
                                         Metric::balanced_accuracy, Metric::macro_f1};

std::string_view to_string(Metric m) noexcept;
Metric metric_from_string(std::string_view s);

/// Lower end of the metric's range; the upper end is always 1.
double metric_lower_bound(Metric m) noexcept;

MetricResult evaluate(Metric m, const PredictionSet& p);

}  // namespace balmix
