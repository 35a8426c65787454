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

namespace balmix {

struct Example {
  std::vector<double> features;
  Label label = 0;
  std::vector<double> one_hot;

  /// Builds the one-hot target from label; throws if label is outside [0, k).
  static Example make(std::vector<double> features, Label label, int k);
};

struct MixedExample {
  std::vector<double> features;
  std::vector<double> soft_label;
  double lambda = 1.0;
};

enum class MixMode { classic, balanced };

// Which source of a Balanced-MixUp pair receives the Beta(alpha, 1) draw.
//   balanced_sample: x = l * x_C + (1 - l) * x_I   (default)
//   instance_sample: x = l * x_I + (1 - l) * x_C
// With alpha < 1 the draw concentrates near 0, so the default keeps most of
// the weight on the instance-sampled example and alpha -> 0 recovers plain
// instance training.
enum class LambdaOn { balanced_sample, instance_sample };

struct MixupConfig {
  double alpha = 0.1;
  MixMode mode = MixMode::balanced;
  LambdaOn lambda_on = LambdaOn::balanced_sample;
};

std::string_view to_string(MixMode m) noexcept;
std::string_view to_string(LambdaOn p) noexcept;
LambdaOn lambda_on_from_string(std::string_view s);

/// lambda ~ Beta(alpha, alpha).
double draw_lambda_classic(double alpha, Rng& rng);

/// lambda ~ Beta(alpha, 1), drawn by inversion of F(x) = x^alpha.
double draw_lambda_balanced(double alpha, Rng& rng);

/// lambda * a + (1 - lambda) * b, applied to features and one-hot labels.
/// Exact at lambda = 0 and lambda = 1.
MixedExample mix(const Example& a, const Example& b, double lambda);

/// Element-wise MixUp of two equally sized batches with Beta(alpha, alpha)
/// coefficients, one per position.
std::vector<MixedExample> classic_mixup_batch(std::span<const Example> first,
                                              std::span<const Example> second, double alpha,
                                              Rng& rng);

/// Balanced-MixUp: position i mixes instance_batch[i] with balanced_batch[i]
/// using an independent Beta(alpha, 1) draw per position, placed according to
/// lambda_on.
std::vector<MixedExample> balanced_mixup_batch(std::span<const Example> instance_batch,
                                               std::span<const Example> balanced_batch,
                                               double alpha, Rng& rng,
                                               LambdaOn lambda_on = LambdaOn::balanced_sample);

}  // namespace balmix
