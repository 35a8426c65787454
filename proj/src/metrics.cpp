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

#include "balmix/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace balmix {

ConfusionMatrix::ConfusionMatrix(int k)
    : k_(k),
      counts_(static_cast<std::size_t>(k > 0 ? k : 0) * static_cast<std::size_t>(k > 0 ? k : 0), 0) {
  if (k < 2) throw std::invalid_argument("ConfusionMatrix: need at least 2 classes");
}

ConfusionMatrix::ConfusionMatrix(int k, std::vector<std::int64_t> row_major) : ConfusionMatrix(k) {
  if (row_major.size() != counts_.size()) {
    throw std::invalid_argument("ConfusionMatrix: expected " + std::to_string(counts_.size()) +
                                " counts, got " + std::to_string(row_major.size()));
  }
  for (std::int64_t c : row_major) {
    if (c < 0) throw std::invalid_argument("ConfusionMatrix: negative count");
    total_ += c;
  }
  counts_ = std::move(row_major);
}

ConfusionMatrix ConfusionMatrix::from_predictions(std::span<const Label> truth,
                                                  std::span<const Label> predicted, int k) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("ConfusionMatrix: truth/prediction length mismatch");
  }
  ConfusionMatrix cm(k);
  for (std::size_t i = 0; i < truth.size(); ++i) cm.add(truth[i], predicted[i]);
  return cm;
}

void ConfusionMatrix::add(Label truth, Label predicted, std::int64_t n) {
  if (truth < 0 || truth >= k_ || predicted < 0 || predicted >= k_) {
    throw std::invalid_argument("ConfusionMatrix: label pair (" + std::to_string(truth) + ", " +
                                std::to_string(predicted) + ") outside [0, " +
                                std::to_string(k_) + ")");
  }
  if (n < 0) throw std::invalid_argument("ConfusionMatrix: negative count");
  counts_[static_cast<std::size_t>(truth) * static_cast<std::size_t>(k_) +
          static_cast<std::size_t>(predicted)] += n;
  total_ += n;
}

std::int64_t ConfusionMatrix::trace() const noexcept {
  std::int64_t t = 0;
  for (int i = 0; i < k_; ++i) t += at(i, i);
  return t;
}

std::vector<std::int64_t> ConfusionMatrix::row_sums() const {
  std::vector<std::int64_t> r(static_cast<std::size_t>(k_), 0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) r[static_cast<std::size_t>(i)] += at(i, j);
  return r;
}

std::vector<std::int64_t> ConfusionMatrix::col_sums() const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(k_), 0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) c[static_cast<std::size_t>(j)] += at(i, j);
  return c;
}

namespace {

void require_nonempty(const ConfusionMatrix& cm, const char* who) {
  if (cm.total() < 1) throw std::invalid_argument(std::string(who) + ": empty confusion matrix");
}

}  // namespace

MetricResult quad_kappa(const ConfusionMatrix& cm) {
  require_nonempty(cm, "quad_kappa");
  const int k = cm.num_classes();
  const auto rows = cm.row_sums();
  const auto cols = cm.col_sums();
  const double total = static_cast<double>(cm.total());
  const double norm = static_cast<double>(k - 1) * static_cast<double>(k - 1);
  double observed = 0.0;
  double expected = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double w = static_cast<double>((i - j) * (i - j)) / norm;
      observed += w * static_cast<double>(cm.at(i, j));
      expected += w * static_cast<double>(rows[static_cast<std::size_t>(i)]) *
                  static_cast<double>(cols[static_cast<std::size_t>(j)]) / total;
    }
  }
  if (expected == 0.0) return {0.0, true};
  return {1.0 - observed / expected, false};
}

MetricResult mcc(const ConfusionMatrix& cm) {
  require_nonempty(cm, "mcc");
  const auto t = cm.row_sums();
  const auto p = cm.col_sums();
  const double s = static_cast<double>(cm.total());
  const double c = static_cast<double>(cm.trace());
  double pt = 0.0, pp = 0.0, tt = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double tk = static_cast<double>(t[k]);
    const double pk = static_cast<double>(p[k]);
    pt += pk * tk;
    pp += pk * pk;
    tt += tk * tk;
  }
  const double denom = (s * s - pp) * (s * s - tt);
  if (denom <= 0.0) return {0.0, true};
  return {(c * s - pt) / std::sqrt(denom), false};
}

MetricResult kendall_tau(const ConfusionMatrix& cm) {
  const int k = cm.num_classes();
  const std::int64_t n = cm.total();
  if (n < 2) throw std::invalid_argument("kendall_tau: need at least 2 pairs");

  const auto ks = static_cast<std::size_t>(k);
  std::vector<std::int64_t> lower_right((ks + 1) * (ks + 1), 0);
  std::vector<std::int64_t> lower_left((ks + 1) * (ks + 1), 0);
  auto lr = [&](int i, int j) -> std::int64_t& {
    return lower_right[static_cast<std::size_t>(i) * (ks + 1) + static_cast<std::size_t>(j)];
  };
  auto ll = [&](int i, int j) -> std::int64_t& {
    return lower_left[static_cast<std::size_t>(i) * (ks + 1) + static_cast<std::size_t>(j)];
  };
  // lr(i, j): rows >= i, cols >= j. ll(i, j): rows >= i, cols < j.
  for (int i = k - 1; i >= 0; --i) {
    for (int j = k - 1; j >= 0; --j) {
      lr(i, j) = cm.at(i, j) + lr(i + 1, j) + lr(i, j + 1) - lr(i + 1, j + 1);
    }
    for (int j = 1; j <= k; ++j) {
      ll(i, j) = cm.at(i, j - 1) + ll(i + 1, j) + ll(i, j - 1) - ll(i + 1, j - 1);
    }
  }
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const std::int64_t c = cm.at(i, j);
      if (c == 0) continue;
      concordant += c * lr(i + 1, j + 1);
      discordant += c * ll(i + 1, j);
    }
  }
  const auto rows = cm.row_sums();
  const auto cols = cm.col_sums();
  const std::int64_t n0 = n * (n - 1) / 2;
  std::int64_t ties_true = 0;
  std::int64_t ties_pred = 0;
  for (std::size_t c = 0; c < ks; ++c) {
    ties_true += rows[c] * (rows[c] - 1) / 2;
    ties_pred += cols[c] * (cols[c] - 1) / 2;
  }
  const double denom =
      static_cast<double>(n0 - ties_true) * static_cast<double>(n0 - ties_pred);
  if (denom <= 0.0) return {0.0, true};
  return {static_cast<double>(concordant - discordant) / std::sqrt(denom), false};
}

MetricResult kendall_tau(const PredictionSet& p) { return kendall_tau(p.confusion()); }

double balanced_accuracy(const ConfusionMatrix& cm) {
  require_nonempty(cm, "balanced_accuracy");
  const auto rows = cm.row_sums();
  double sum = 0.0;
  for (int k = 0; k < cm.num_classes(); ++k) {
    const auto r = rows[static_cast<std::size_t>(k)];
    if (r == 0) {
      throw std::invalid_argument("balanced_accuracy: true class " + std::to_string(k) +
                                  " has no examples");
    }
    sum += static_cast<double>(cm.at(k, k)) / static_cast<double>(r);
  }
  return sum / cm.num_classes();
}

double macro_f1(const ConfusionMatrix& cm) {
  require_nonempty(cm, "macro_f1");
  const auto rows = cm.row_sums();
  const auto cols = cm.col_sums();
  double sum = 0.0;
  for (int k = 0; k < cm.num_classes(); ++k) {
    const auto tp = cm.at(k, k);
    // F1 = 2PR / (P + R) = 2 tp / (row + col); zero when tp = 0.
    if (tp > 0) {
      sum += 2.0 * static_cast<double>(tp) /
             static_cast<double>(rows[static_cast<std::size_t>(k)] + cols[static_cast<std::size_t>(k)]);
    }
  }
  return sum / cm.num_classes();
}

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::quad_kappa: return "quad_kappa";
    case Metric::mcc: return "mcc";
    case Metric::kendall_tau: return "kendall_tau";
    case Metric::balanced_accuracy: return "balanced_accuracy";
    case Metric::macro_f1: return "macro_f1";
  }
  return "?";
}

Metric metric_from_string(std::string_view s) {
  for (Metric m : kAllMetrics) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown metric '" + std::string(s) + "'");
}

double metric_lower_bound(Metric m) noexcept {
  switch (m) {
    case Metric::balanced_accuracy:
    case Metric::macro_f1: return 0.0;
    default: return -1.0;
  }
}

MetricResult evaluate(Metric m, const PredictionSet& p) {
  switch (m) {
    case Metric::quad_kappa: return quad_kappa(p.confusion());
    case Metric::mcc: return mcc(p.confusion());
    case Metric::kendall_tau: return kendall_tau(p);
    case Metric::balanced_accuracy: return {balanced_accuracy(p.confusion()), false};
    case Metric::macro_f1: return {macro_f1(p.confusion()), false};
  }
  return {};
}

}  // namespace balmix
