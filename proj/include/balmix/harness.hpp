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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "balmix/dataset.hpp"
#include "balmix/mixing.hpp"
#include "balmix/model.hpp"
#include "balmix/sampling.hpp"
#include "balmix/synthdata.hpp"

namespace balmix {

// The comparison set: three sampling laws, two imbalance losses, plain MixUp
// and Balanced-MixUp.
enum class Method { instance, class_based, sqrt, focal, class_balanced, mixup_classic, balanced_mixup };

struct MethodSpec {
  Method method = Method::instance;
  double alpha = 0.0;  // mixup methods only

  /// "instance", "class", "sqrt", "focal", "class_balanced",
  /// "mixup_classic(0.2)", "balanced_mixup(0.1)".
  std::string label() const;
  static MethodSpec parse(const std::string& label);

  bool uses_mixing() const noexcept {
    return method == Method::mixup_classic || method == Method::balanced_mixup;
  }
  bool operator==(const MethodSpec&) const = default;
};

std::string_view to_string(Method m) noexcept;

struct EvaluationProtocol {
  enum class Kind { holdout, kfold };
  Kind kind = Kind::kfold;
  int folds = 5;
  double test_fraction = 0.2;   // holdout only
  double val_fraction = 0.1;    // carved from the non-test rows
};

struct ExperimentConfig {
  std::variant<SyntheticSpec, std::filesystem::path> data = SyntheticSpec{};
  MethodSpec method;
  Architecture architecture = Architecture::linear();

  double learning_rate = 0.01;
  std::size_t batch_size = 8;
  int cycles = 3;
  // One epoch is ceil(N_train / batch_size) steps whatever the method, so all
  // methods in a comparison get the same SGD budget.
  int epochs_per_cycle = 10;
  Metric selection_metric = Metric::balanced_accuracy;

  EvaluationProtocol protocol;
  std::vector<std::uint64_t> seeds = {0};
  std::vector<Metric> metrics = {std::begin(kAllMetrics), std::end(kAllMetrics)};

  double focal_gamma = 2.0;
  double cb_beta = 0.9999;
  LambdaOn lambda_on = LambdaOn::balanced_sample;

  int threads = 1;
  std::optional<std::filesystem::path> checkpoint_dir;  // write best checkpoints here
};

inline constexpr int kConfigSchemaVersion = 1;

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Expands a config file. A "methods" array yields one config per method;
/// a single "method" yields one config.
std::vector<ExperimentConfig> configs_from_json(const nlohmann::json& j);
std::vector<ExperimentConfig> load_config_file(const std::filesystem::path& path);

/// Content hash of the canonical config. Seeds, thread count and checkpoint
/// location are excluded: they select cells, not what a cell computes.
std::string config_fingerprint(const ExperimentConfig& cfg);

struct ResultRecord {
  std::string fingerprint;
  std::string method;
  std::string architecture;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  int fold = 0;
  std::map<std::string, double> metrics;
  std::map<std::string, bool> degenerate;
  std::int64_t sgd_steps = 0;
  std::int64_t best_step = 0;
  double validation_score = 0.0;
  double wall_time_s = 0.0;
  std::string checkpoint;  // path of the saved checkpoint, empty if none
};

nlohmann::json record_to_json(const ResultRecord& r);
ResultRecord record_from_json(const nlohmann::json& j);

/// One JSON object per line.
void write_records(const std::vector<ResultRecord>& records, std::ostream& out);
std::vector<ResultRecord> read_records(std::istream& in);

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Batch pipelines over a fixed training split.

std::vector<Example> make_examples(const Dataset& ds);

class SampledBatchSource final : public BatchSource {
 public:
  SampledBatchSource(std::span<const Example> examples, IndexSampler sampler);
  std::vector<MixedExample> next_batch(std::size_t batch_size) override;

 private:
  std::span<const Example> examples_;
  IndexSampler sampler_;
};

class ClassicMixupSource final : public BatchSource {
 public:
  ClassicMixupSource(std::span<const Example> examples, IndexSampler first, IndexSampler second,
                     double alpha, std::uint64_t seed);
  std::vector<MixedExample> next_batch(std::size_t batch_size) override;

 private:
  std::span<const Example> examples_;
  IndexSampler first_, second_;
  double alpha_;
  Rng rng_;
};

/// Pairs an instance-based (q = 1) stream with a class-based (q = 0) stream.
class BalancedMixupSource final : public BatchSource {
 public:
  BalancedMixupSource(std::span<const Example> examples, IndexSampler instance,
                      IndexSampler balanced, double alpha, std::uint64_t seed,
                      LambdaOn lambda_on = LambdaOn::balanced_sample);
  std::vector<MixedExample> next_batch(std::size_t batch_size) override;

 private:
  std::span<const Example> examples_;
  IndexSampler instance_, balanced_;
  double alpha_;
  Rng rng_;
  LambdaOn lambda_on_;
};

Dataset load_data(const ExperimentConfig& cfg);

/// Trains and evaluates every (seed, fold) cell. Records are ordered by seed
/// (config order) then fold, independent of the thread count.
std::vector<ResultRecord> run(const ExperimentConfig& cfg);

/// run() with a pre-loaded dataset.
std::vector<ResultRecord> run(const ExperimentConfig& cfg, const Dataset& data);

/// run() once per alpha; requires method balanced_mixup.
std::vector<std::pair<double, std::vector<ResultRecord>>> sweep_alpha(
    const ExperimentConfig& cfg, std::span<const double> alphas);

}  // namespace balmix
