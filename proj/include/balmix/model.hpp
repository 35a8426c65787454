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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "balmix/common.hpp"
#include "balmix/dataset.hpp"
#include "balmix/losses.hpp"
#include "balmix/metrics.hpp"
#include "balmix/mixing.hpp"

namespace balmix {

struct Architecture {
  enum class Kind { linear, one_hidden };
  Kind kind = Kind::linear;
  int hidden = 0;

  static Architecture linear() { return {Kind::linear, 0}; }
  static Architecture one_hidden(int h) { return {Kind::one_hidden, h}; }

  /// "linear" or "one_hidden(64)".
  std::string descriptor() const;
  static Architecture parse(const std::string& descriptor);

  bool operator==(const Architecture&) const = default;
};

// Parameter layout, flat:
//   linear:     W[K x d] row-major, b[K]
//   one_hidden: W1[h x d], b1[h], W2[K x h], b2[K]
class Classifier {
 public:
  Classifier(Architecture arch, std::size_t input_dim, int num_classes);

  /// Weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], drawn from seed.
  static Classifier initialized(Architecture arch, std::size_t input_dim, int num_classes,
                                std::uint64_t seed);

  static std::size_t parameter_count(Architecture arch, std::size_t input_dim, int num_classes);

  const Architecture& architecture() const noexcept { return arch_; }
  std::size_t input_dim() const noexcept { return dim_; }
  int num_classes() const noexcept { return k_; }

  std::span<double> parameters() noexcept { return params_; }
  std::span<const double> parameters() const noexcept { return params_; }
  void set_parameters(std::vector<double> params);

  std::vector<double> forward(std::span<const double> x) const;
  Label predict(std::span<const double> x) const;

  double loss(std::span<const double> x, std::span<const double> target,
              const LossConfig& cfg) const;

  /// Gradient of the configured loss with respect to every parameter.
  std::vector<double> backward(std::span<const double> x, std::span<const double> target,
                               const LossConfig& cfg) const;

  /// Adds scale * gradient into grad and returns the loss.
  double accumulate_gradient(std::span<const double> x, std::span<const double> target,
                             const LossConfig& cfg, std::span<double> grad, double scale) const;

 private:
  void check_input(std::span<const double> x) const;
  // Hidden pre-activations for one_hidden; fills logits.
  void forward_into(std::span<const double> x, std::vector<double>& hidden_pre,
                    std::vector<double>& logits) const;

  Architecture arch_;
  std::size_t dim_;
  int k_;
  std::vector<double> params_;
};

/// Cosine schedule restarted every steps_per_cycle steps:
/// base_lr * 0.5 * (1 + cos(pi * (step mod steps_per_cycle) / steps_per_cycle)).
double cosine_lr(std::int64_t step, std::int64_t steps_per_cycle, double base_lr);

struct TrainConfig {
  double learning_rate = 0.01;
  std::size_t batch_size = 8;
  int cycles = 1;
  std::int64_t steps_per_cycle = 100;
  std::uint64_t seed = 0;
  Metric selection_metric = Metric::balanced_accuracy;
};

struct Checkpoint {
  std::vector<double> parameters;
  double score = 0.0;
  std::int64_t step = 0;  // SGD steps completed when the snapshot was taken
};

struct CycleScore {
  std::int64_t step = 0;
  double score = 0.0;
};

struct TrainResult {
  Checkpoint best;
  std::vector<CycleScore> history;
  std::int64_t steps = 0;
};

class BatchSource {
 public:
  virtual ~BatchSource() = default;
  /// Returns up to batch_size training targets; fewer means the source is exhausted.
  virtual std::vector<MixedExample> next_batch(std::size_t batch_size) = 0;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PredictionSet predict_all(const Classifier& c, const Dataset& ds);

/// Score of the classifier on a split; degenerate metric values count as 0.
double score_split(const Classifier& c, const Dataset& ds, Metric metric);

/// Runs cycles * steps_per_cycle mini-batch SGD steps with the cosine
/// schedule and scores the validation split at every cycle end. The best
/// cycle-end snapshot is returned (earliest wins ties); `c` is left holding
/// the final parameters.
TrainResult train(Classifier& c, BatchSource& source, const TrainConfig& cfg,
                  const LossConfig& loss, const Dataset& validation);

struct CheckpointFile {
  Architecture architecture;
  std::size_t input_dim = 0;
  int num_classes = 0;
  std::uint64_t seed = 0;
  std::string selection_metric;
  Checkpoint checkpoint;
};

inline constexpr int kCheckpointSchemaVersion = 1;

void save_checkpoint(const std::filesystem::path& path, const CheckpointFile& file);
CheckpointFile load_checkpoint(const std::filesystem::path& path);

}  // namespace balmix
