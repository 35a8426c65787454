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

#include <span>
#include <string_view>
#include <vector>

#include "balmix/common.hpp"
#include "balmix/histogram.hpp"

namespace balmix {

// Probabilities are clamped here before taking logs.
inline constexpr double kProbabilityFloor = 1e-12;

enum class LossKind { cross_entropy, focal, class_balanced };

std::string_view to_string(LossKind k) noexcept;
LossKind loss_kind_from_string(std::string_view s);

struct LossConfig {
  LossKind kind = LossKind::cross_entropy;
  double gamma = 2.0;                  // focal focusing parameter
  double beta = 0.9999;                // effective-number parameter
  std::vector<double> class_weights;   // class_balanced only, one per class

  /// Throws std::invalid_argument on gamma < 0, beta outside [0, 1), or a
  /// class_balanced config without weights.
  void validate() const;
};

struct LossValue {
  double scalar = 0.0;
  std::vector<double> per_example;

  static LossValue from_per_example(std::vector<double> values);
};

/// Max-subtracted softmax. Throws on non-finite logits.
std::vector<double> softmax(std::span<const double> logits);

/// -sum_k y_k log p_k. The label must be a probability vector.
double cross_entropy_soft(std::span<const double> logits, std::span<const double> soft_label);

/// -(1 - p_t)^gamma log p_t.
double focal_loss(std::span<const double> logits, Label label, double gamma);

/// w_k = (1 - beta) / (1 - beta^{n_k}), rescaled to sum to K.
std::vector<double> class_balanced_weights(const ClassHistogram& h, double beta);

/// w_label * (-log p_label).
double class_balanced_loss(std::span<const double> logits, Label label,
                           std::span<const double> weights);

struct LogitLoss {
  double value = 0.0;
  std::vector<double> gradient;  // d value / d logits
};

// Loss of a target distribution and its gradient with respect to the logits.
// Focal and class-balanced losses are extended to soft targets as the
// target-weighted sum of their per-class hard-label terms, which coincides
// with the hard-label definitions on one-hot targets.
LogitLoss loss_with_gradient(std::span<const double> logits, std::span<const double> target,
                             const LossConfig& cfg);

}  // namespace balmix
