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

#include "balmix/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <regex>

#include <json.hpp>

namespace balmix {

std::string Architecture::descriptor() const {
  if (kind == Kind::linear) return "linear";
  return "one_hidden(" + std::to_string(hidden) + ")";
}

Architecture Architecture::parse(const std::string& descriptor) {
  if (descriptor == "linear") return linear();
  static const std::regex hidden_re(R"(one_hidden\((\d+)\))");
  std::smatch m;
  if (std::regex_match(descriptor, m, hidden_re)) {
    const int h = std::stoi(m[1].str());
    if (h >= 1) return one_hidden(h);
  }
  throw std::invalid_argument("unknown architecture '" + descriptor + "'");
}

Classifier::Classifier(Architecture arch, std::size_t input_dim, int num_classes)
    : arch_(arch), dim_(input_dim), k_(num_classes) {
  if (input_dim == 0) throw std::invalid_argument("Classifier: input dimension must be >= 1");
  if (num_classes < 2) throw std::invalid_argument("Classifier: need at least 2 classes");
  if (arch.kind == Architecture::Kind::one_hidden && arch.hidden < 1) {
    throw std::invalid_argument("Classifier: hidden width must be >= 1");
  }
  params_.assign(parameter_count(arch, input_dim, num_classes), 0.0);
}

std::size_t Classifier::parameter_count(Architecture arch, std::size_t d, int num_classes) {
  const auto k = static_cast<std::size_t>(num_classes);
  if (arch.kind == Architecture::Kind::linear) return (d + 1) * k;
  const auto h = static_cast<std::size_t>(arch.hidden);
  return (d + 1) * h + (h + 1) * k;
}

Classifier Classifier::initialized(Architecture arch, std::size_t input_dim, int num_classes,
                                   std::uint64_t seed) {
  Classifier c(arch, input_dim, num_classes);
  Rng rng(seed);
  auto fill = [&](std::size_t begin, std::size_t count, std::size_t fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> u(-bound, bound);
    for (std::size_t i = begin; i < begin + count; ++i) c.params_[i] = u(rng);
  };
  const auto k = static_cast<std::size_t>(num_classes);
  if (arch.kind == Architecture::Kind::linear) {
    fill(0, (input_dim + 1) * k, input_dim);
  } else {
    const auto h = static_cast<std::size_t>(arch.hidden);
    fill(0, (input_dim + 1) * h, input_dim);
    fill((input_dim + 1) * h, (h + 1) * k, h);
  }
  return c;
}

void Classifier::set_parameters(std::vector<double> params) {
  if (params.size() != params_.size()) {
    throw std::invalid_argument("Classifier: expected " + std::to_string(params_.size()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  params_ = std::move(params);
}

void Classifier::check_input(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("Classifier: input has dimension " + std::to_string(x.size()) +
                                ", expected " + std::to_string(dim_));
  }
}

void Classifier::forward_into(std::span<const double> x, std::vector<double>& hidden_pre,
                              std::vector<double>& logits) const {
  const auto k = static_cast<std::size_t>(k_);
  const double* p = params_.data();
  logits.assign(k, 0.0);
  if (arch_.kind == Architecture::Kind::linear) {
    const double* b = p + k * dim_;
    for (std::size_t c = 0; c < k; ++c) {
      const double* w = p + c * dim_;
      double z = b[c];
      for (std::size_t j = 0; j < dim_; ++j) z += w[j] * x[j];
      logits[c] = z;
    }
    return;
  }
  const auto h = static_cast<std::size_t>(arch_.hidden);
  const double* b1 = p + h * dim_;
  const double* w2 = b1 + h;
  const double* b2 = w2 + k * h;
  hidden_pre.assign(h, 0.0);
  for (std::size_t u = 0; u < h; ++u) {
    const double* w = p + u * dim_;
    double a = b1[u];
    for (std::size_t j = 0; j < dim_; ++j) a += w[j] * x[j];
    hidden_pre[u] = a;
  }
  for (std::size_t c = 0; c < k; ++c) {
    const double* w = w2 + c * h;
    double z = b2[c];
    for (std::size_t u = 0; u < h; ++u) z += w[u] * std::max(hidden_pre[u], 0.0);
    logits[c] = z;
  }
}

std::vector<double> Classifier::forward(std::span<const double> x) const {
  check_input(x);
  std::vector<double> hidden, logits;
  forward_into(x, hidden, logits);
  return logits;
}

Label Classifier::predict(std::span<const double> x) const {
  const auto z = forward(x);
  return static_cast<Label>(std::max_element(z.begin(), z.end()) - z.begin());
}

double Classifier::loss(std::span<const double> x, std::span<const double> target,
                        const LossConfig& cfg) const {
  return loss_with_gradient(forward(x), target, cfg).value;
}

std::vector<double> Classifier::backward(std::span<const double> x,
                                         std::span<const double> target,
                                         const LossConfig& cfg) const {
  std::vector<double> grad(params_.size(), 0.0);
  accumulate_gradient(x, target, cfg, grad, 1.0);
  return grad;
}

double Classifier::accumulate_gradient(std::span<const double> x, std::span<const double> target,
                                       const LossConfig& cfg, std::span<double> grad,
                                       double scale) const {
  check_input(x);
  if (grad.size() != params_.size()) {
    throw std::invalid_argument("Classifier: gradient buffer has the wrong size");
  }
  std::vector<double> hidden, logits;
  forward_into(x, hidden, logits);
  const LogitLoss ll = loss_with_gradient(logits, target, cfg);
  const auto k = static_cast<std::size_t>(k_);
  double* g = grad.data();

  if (arch_.kind == Architecture::Kind::linear) {
    double* gb = g + k * dim_;
    for (std::size_t c = 0; c < k; ++c) {
      const double gc = scale * ll.gradient[c];
      double* gw = g + c * dim_;
      for (std::size_t j = 0; j < dim_; ++j) gw[j] += gc * x[j];
      gb[c] += gc;
    }
    return ll.value;
  }

  const auto h = static_cast<std::size_t>(arch_.hidden);
  const double* w2 = params_.data() + h * dim_ + h;
  double* gb1 = g + h * dim_;
  double* gw2 = gb1 + h;
  double* gb2 = gw2 + k * h;
  std::vector<double> d_hidden(h, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    const double gc = scale * ll.gradient[c];
    if (gc == 0.0) continue;
    for (std::size_t u = 0; u < h; ++u) {
      gw2[c * h + u] += gc * std::max(hidden[u], 0.0);
      d_hidden[u] += gc * w2[c * h + u];
    }
    gb2[c] += gc;
  }
  for (std::size_t u = 0; u < h; ++u) {
    if (hidden[u] <= 0.0) continue;
    const double du = d_hidden[u];
    double* gw = g + u * dim_;
    for (std::size_t j = 0; j < dim_; ++j) gw[j] += du * x[j];
    gb1[u] += du;
  }
  return ll.value;
}

double cosine_lr(std::int64_t step, std::int64_t steps_per_cycle, double base_lr) {
  if (steps_per_cycle < 1) throw std::invalid_argument("cosine_lr: steps_per_cycle must be >= 1");
  const auto pos = static_cast<double>(((step % steps_per_cycle) + steps_per_cycle) % steps_per_cycle);
  return base_lr * 0.5 *
         (1.0 + std::cos(std::numbers::pi * pos / static_cast<double>(steps_per_cycle)));
}

PredictionSet predict_all(const Classifier& c, const Dataset& ds) {
  PredictionSet out;
  out.num_classes = ds.num_classes;
  out.truth = ds.labels;
  out.predicted.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) out.predicted.push_back(c.predict(ds.row(i)));
  return out;
}

double score_split(const Classifier& c, const Dataset& ds, Metric metric) {
  const MetricResult r = evaluate(metric, predict_all(c, ds));
  return r.degenerate ? 0.0 : r.value;
}

TrainResult train(Classifier& c, BatchSource& source, const TrainConfig& cfg,
                  const LossConfig& loss, const Dataset& validation) {
  if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("train: learning rate must be > 0");
  if (cfg.batch_size < 1) throw std::invalid_argument("train: batch size must be >= 1");
  if (cfg.cycles < 1 || cfg.steps_per_cycle < 1) {
    throw std::invalid_argument("train: cycles and steps_per_cycle must be >= 1");
  }
  if (validation.size() == 0) throw std::invalid_argument("train: empty validation split");
  if (validation.dim != c.input_dim() || validation.num_classes != c.num_classes()) {
    throw std::invalid_argument("train: validation split does not match the classifier");
  }
  loss.validate();
  // Every class must be present so the selection metric is defined.
  (void)validation.histogram();

  TrainResult result;
  result.best.score = -std::numeric_limits<double>::infinity();
  std::vector<double> grad(c.parameters().size());
  std::int64_t step = 0;

  for (int cycle = 0; cycle < cfg.cycles; ++cycle) {
    for (std::int64_t s = 0; s < cfg.steps_per_cycle; ++s, ++step) {
      const auto batch = source.next_batch(cfg.batch_size);
      if (batch.size() != cfg.batch_size) {
        throw TrainingError("train: batch source exhausted at step " + std::to_string(step));
      }
      std::fill(grad.begin(), grad.end(), 0.0);
      const double inv = 1.0 / static_cast<double>(batch.size());
      double batch_loss = 0.0;
      for (const auto& ex : batch) {
        batch_loss += c.accumulate_gradient(ex.features, ex.soft_label, loss, grad, inv);
      }
      if (!std::isfinite(batch_loss)) {
        throw TrainingError("train: non-finite loss at step " + std::to_string(step) +
                            " (cycle " + std::to_string(cycle) + ")");
      }
      const double lr = cosine_lr(step, cfg.steps_per_cycle, cfg.learning_rate);
      auto params = c.parameters();
      for (std::size_t i = 0; i < params.size(); ++i) params[i] -= lr * grad[i];
    }
    const double score = score_split(c, validation, cfg.selection_metric);
    result.history.push_back({step, score});
    if (score > result.best.score) {
      result.best.score = score;
      result.best.step = step;
      result.best.parameters.assign(c.parameters().begin(), c.parameters().end());
    }
  }
  result.steps = step;
  return result;
}

void save_checkpoint(const std::filesystem::path& path, const CheckpointFile& file) {
  nlohmann::json j;
  j["schema"] = "balmix.checkpoint";
  j["schema_version"] = kCheckpointSchemaVersion;
  j["architecture"] = file.architecture.descriptor();
  j["input_dim"] = file.input_dim;
  j["num_classes"] = file.num_classes;
  j["seed"] = file.seed;
  j["selection_metric"] = file.selection_metric;
  j["score"] = file.checkpoint.score;
  j["step"] = file.checkpoint.step;
  j["parameters"] = file.checkpoint.parameters;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path.string());
  out << j.dump(1) << '\n';
  if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path.string());
}

CheckpointFile load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path.string());
  const auto j = nlohmann::json::parse(in);
  if (j.value("schema", "") != "balmix.checkpoint") {
    throw std::runtime_error("load_checkpoint: " + path.string() + " is not a checkpoint file");
  }
  if (j.at("schema_version").get<int>() != kCheckpointSchemaVersion) {
    throw std::runtime_error("load_checkpoint: unsupported schema version");
  }
  CheckpointFile f;
  f.architecture = Architecture::parse(j.at("architecture").get<std::string>());
  f.input_dim = j.at("input_dim").get<std::size_t>();
  f.num_classes = j.at("num_classes").get<int>();
  f.seed = j.at("seed").get<std::uint64_t>();
  f.selection_metric = j.at("selection_metric").get<std::string>();
  f.checkpoint.score = j.at("score").get<double>();
  f.checkpoint.step = j.at("step").get<std::int64_t>();
  f.checkpoint.parameters = j.at("parameters").get<std::vector<double>>();
  if (f.checkpoint.parameters.size() !=
      Classifier::parameter_count(f.architecture, f.input_dim, f.num_classes)) {
    throw std::runtime_error("load_checkpoint: parameter count does not match architecture");
  }
  return f;
}

}  // namespace balmix
