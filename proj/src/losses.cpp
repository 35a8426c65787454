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

#include "balmix/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace balmix {

namespace {

double safe_log(double p) { return std::log(std::max(p, kProbabilityFloor)); }

void require_label(Label label, std::size_t k, const char* who) {
  if (label < 0 || static_cast<std::size_t>(label) >= k) {
    throw std::invalid_argument(std::string(who) + ": label " + std::to_string(label) +
                                " outside [0, " + std::to_string(k) + ")");
  }
}

void require_probability_vector(std::span<const double> y, std::size_t k, const char* who) {
  if (y.size() != k) {
    throw std::invalid_argument(std::string(who) + ": label has " + std::to_string(y.size()) +
                                " entries, expected " + std::to_string(k));
  }
  double sum = 0.0;
  for (double v : y) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
      throw std::invalid_argument(std::string(who) + ": label entry outside [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(who) + ": label sums to " + std::to_string(sum));
  }
}

// Derivative of -(1 - p)^gamma log p with respect to the logit of the same
// class, divided by p: the factor g in d/dz_j = g * (delta_tj - p_j).
double focal_factor(double p, double gamma) {
  const double one_minus = 1.0 - p;
  double g = -std::pow(one_minus, gamma);
  if (gamma > 0.0 && one_minus > 0.0) {
    g += gamma * std::pow(one_minus, gamma - 1.0) * p * safe_log(p);
  }
  return g;
}

}  // namespace

std::string_view to_string(LossKind k) noexcept {
  switch (k) {
    case LossKind::cross_entropy: return "cross_entropy";
    case LossKind::focal: return "focal";
    case LossKind::class_balanced: return "class_balanced";
  }
  return "?";
}

LossKind loss_kind_from_string(std::string_view s) {
  if (s == "cross_entropy") return LossKind::cross_entropy;
  if (s == "focal") return LossKind::focal;
  if (s == "class_balanced") return LossKind::class_balanced;
  throw std::invalid_argument("unknown loss kind '" + std::string(s) + "'");
}

void LossConfig::validate() const {
  if (!(gamma >= 0.0)) throw std::invalid_argument("LossConfig: gamma must be >= 0");
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("LossConfig: beta must lie in [0, 1)");
  if (kind == LossKind::class_balanced && class_weights.empty()) {
    throw std::invalid_argument("LossConfig: class_balanced loss needs class weights");
  }
}

LossValue LossValue::from_per_example(std::vector<double> values) {
  LossValue out;
  out.per_example = std::move(values);
  if (!out.per_example.empty()) {
    out.scalar = std::accumulate(out.per_example.begin(), out.per_example.end(), 0.0) /
                 static_cast<double>(out.per_example.size());
  }
  return out;
}

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty logits");
  double hi = logits[0];
  for (double z : logits) {
    if (!std::isfinite(z)) throw std::invalid_argument("softmax: non-finite logit");
    hi = std::max(hi, z);
  }
  std::vector<double> p(logits.size());
  double norm = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    p[k] = std::exp(logits[k] - hi);
    norm += p[k];
  }
  for (double& v : p) v /= norm;
  return p;
}

double cross_entropy_soft(std::span<const double> logits, std::span<const double> soft_label) {
  require_probability_vector(soft_label, logits.size(), "cross_entropy_soft");
  const auto p = softmax(logits);
  double loss = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (soft_label[k] != 0.0) loss -= soft_label[k] * safe_log(p[k]);
  }
  return loss;
}

double focal_loss(std::span<const double> logits, Label label, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("focal_loss: gamma must be >= 0");
  require_label(label, logits.size(), "focal_loss");
  const double pt = softmax(logits)[static_cast<std::size_t>(label)];
  return -std::pow(1.0 - pt, gamma) * safe_log(pt);
}

std::vector<double> class_balanced_weights(const ClassHistogram& h, double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::invalid_argument("class_balanced_weights: beta must lie in [0, 1), got " +
                                std::to_string(beta));
  }
  const auto counts = h.counts();
  std::vector<double> w(counts.size());
  const double log_beta = std::log(beta);  // -inf at beta = 0, giving beta^n = 0
  double sum = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    // 1 - beta^n computed as -expm1(n log beta) to keep precision near beta = 1.
    const double effective = -std::expm1(static_cast<double>(counts[k]) * log_beta);
    w[k] = (1.0 - beta) / effective;
    sum += w[k];
  }
  const double scale = static_cast<double>(counts.size()) / sum;
  for (double& v : w) v *= scale;
  return w;
}

double class_balanced_loss(std::span<const double> logits, Label label,
                           std::span<const double> weights) {
  require_label(label, logits.size(), "class_balanced_loss");
  if (weights.size() != logits.size()) {
    throw std::invalid_argument("class_balanced_loss: weight count mismatch");
  }
  const double pt = softmax(logits)[static_cast<std::size_t>(label)];
  return -weights[static_cast<std::size_t>(label)] * safe_log(pt);
}

LogitLoss loss_with_gradient(std::span<const double> logits, std::span<const double> target,
                             const LossConfig& cfg) {
  const std::size_t k = logits.size();
  require_probability_vector(target, k, "loss_with_gradient");
  const auto p = softmax(logits);
  LogitLoss out;
  out.gradient.assign(k, 0.0);

  switch (cfg.kind) {
    case LossKind::cross_entropy: {
      for (std::size_t j = 0; j < k; ++j) {
        if (target[j] != 0.0) out.value -= target[j] * safe_log(p[j]);
        out.gradient[j] = p[j] - target[j];
      }
      break;
    }
    case LossKind::focal: {
      double weighted = 0.0;
      for (std::size_t t = 0; t < k; ++t) {
        if (target[t] == 0.0) continue;
        out.value -= target[t] * std::pow(1.0 - p[t], cfg.gamma) * safe_log(p[t]);
        const double g = target[t] * focal_factor(p[t], cfg.gamma);
        out.gradient[t] += g;
        weighted += g;
      }
      for (std::size_t j = 0; j < k; ++j) out.gradient[j] -= p[j] * weighted;
      break;
    }
    case LossKind::class_balanced: {
      if (cfg.class_weights.size() != k) {
        throw std::invalid_argument("loss_with_gradient: class weight count mismatch");
      }
      double weighted = 0.0;
      for (std::size_t t = 0; t < k; ++t) {
        if (target[t] == 0.0) continue;
        const double wy = target[t] * cfg.class_weights[t];
        out.value -= wy * safe_log(p[t]);
        out.gradient[t] -= wy;
        weighted += wy;
      }
      for (std::size_t j = 0; j < k; ++j) out.gradient[j] += p[j] * weighted;
      break;
    }
  }
  return out;
}

}  // namespace balmix
