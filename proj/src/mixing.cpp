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

#include "balmix/mixing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace balmix {

namespace {

void require_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument(std::string(who) + ": alpha must be > 0, got " +
                                std::to_string(alpha));
  }
}

// Open-interval uniform: never returns exactly 0, so log/pow stay finite.
double uniform_open(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double v = u(rng);
  while (v <= 0.0) v = u(rng);
  return v;
}

}  // namespace

Example Example::make(std::vector<double> features, Label label, int k) {
  if (label < 0 || label >= k) {
    throw std::invalid_argument("Example: label " + std::to_string(label) + " outside [0, " +
                                std::to_string(k) + ")");
  }
  std::vector<double> one_hot(static_cast<std::size_t>(k), 0.0);
  one_hot[static_cast<std::size_t>(label)] = 1.0;
  return {std::move(features), label, std::move(one_hot)};
}

std::string_view to_string(MixMode m) noexcept {
  return m == MixMode::classic ? "classic" : "balanced";
}

std::string_view to_string(LambdaOn p) noexcept {
  return p == LambdaOn::balanced_sample ? "balanced_sample" : "instance_sample";
}

LambdaOn lambda_on_from_string(std::string_view s) {
  if (s == "balanced_sample") return LambdaOn::balanced_sample;
  if (s == "instance_sample") return LambdaOn::instance_sample;
  throw std::invalid_argument("unknown lambda placement '" + std::string(s) + "'");
}

double draw_lambda_classic(double alpha, Rng& rng) {
  require_alpha(alpha, "draw_lambda_classic");
  std::gamma_distribution<double> g(alpha, 1.0);
  for (;;) {
    const double x = g(rng);
    const double y = g(rng);
    const double s = x + y;
    // Both gammas can underflow to zero for tiny alpha; redraw.
    if (s > 0.0) return x / s;
  }
}

double draw_lambda_balanced(double alpha, Rng& rng) {
  require_alpha(alpha, "draw_lambda_balanced");
  return std::pow(uniform_open(rng), 1.0 / alpha);
}

MixedExample mix(const Example& a, const Example& b, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("mix: lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
  if (a.features.size() != b.features.size()) {
    throw std::invalid_argument("mix: feature dimension mismatch (" +
                                std::to_string(a.features.size()) + " vs " +
                                std::to_string(b.features.size()) + ")");
  }
  if (a.one_hot.size() != b.one_hot.size()) {
    throw std::invalid_argument("mix: class count mismatch");
  }
  const double mu = 1.0 - lambda;
  MixedExample out;
  out.lambda = lambda;
  out.features.resize(a.features.size());
  for (std::size_t i = 0; i < a.features.size(); ++i) {
    out.features[i] = lambda * a.features[i] + mu * b.features[i];
  }
  out.soft_label.resize(a.one_hot.size());
  for (std::size_t k = 0; k < a.one_hot.size(); ++k) {
    out.soft_label[k] = lambda * a.one_hot[k] + mu * b.one_hot[k];
  }
  return out;
}

std::vector<MixedExample> classic_mixup_batch(std::span<const Example> first,
                                              std::span<const Example> second, double alpha,
                                              Rng& rng) {
  require_alpha(alpha, "classic_mixup_batch");
  if (first.size() != second.size()) {
    throw std::invalid_argument("classic_mixup_batch: batch length mismatch");
  }
  std::vector<MixedExample> out;
  out.reserve(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    out.push_back(mix(first[i], second[i], draw_lambda_classic(alpha, rng)));
  }
  return out;
}

std::vector<MixedExample> balanced_mixup_batch(std::span<const Example> instance_batch,
                                               std::span<const Example> balanced_batch,
                                               double alpha, Rng& rng, LambdaOn lambda_on) {
  require_alpha(alpha, "balanced_mixup_batch");
  if (instance_batch.size() != balanced_batch.size()) {
    throw std::invalid_argument("balanced_mixup_batch: batch length mismatch (" +
                                std::to_string(instance_batch.size()) + " vs " +
                                std::to_string(balanced_batch.size()) + ")");
  }
  std::vector<MixedExample> out;
  out.reserve(instance_batch.size());
  for (std::size_t i = 0; i < instance_batch.size(); ++i) {
    const double lambda = draw_lambda_balanced(alpha, rng);
    if (lambda_on == LambdaOn::balanced_sample) {
      out.push_back(mix(balanced_batch[i], instance_batch[i], lambda));
    } else {
      out.push_back(mix(instance_batch[i], balanced_batch[i], lambda));
    }
  }
  return out;
}

}  // namespace balmix
