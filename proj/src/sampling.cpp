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

#include "balmix/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace balmix {

std::vector<double> class_probabilities(const ClassHistogram& h, double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("class_probabilities: q must lie in [0, 1], got " +
                                std::to_string(q));
  }
  const auto counts = h.counts();
  std::vector<double> p(counts.size());
  double norm = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    // n_j >= 1, so 0^0 never occurs.
    p[j] = std::pow(static_cast<double>(counts[j]), q);
    norm += p[j];
  }
  for (double& v : p) v /= norm;
  return p;
}

IndexSampler::IndexSampler(std::span<const Label> labels, const ClassHistogram& h, double q,
                           std::uint64_t seed)
    : strategy_(SamplingStrategy::from_histogram(h, q)),
      pools_(static_cast<std::size_t>(h.num_classes())),
      dataset_size_(labels.size()),
      rng_(seed),
      class_dist_(strategy_.class_probs.begin(), strategy_.class_probs.end()) {
  if (static_cast<std::int64_t>(labels.size()) != h.total()) {
    throw std::invalid_argument("IndexSampler: " + std::to_string(labels.size()) +
                                " labels but histogram total is " + std::to_string(h.total()));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Label y = labels[i];
    if (y < 0 || y >= h.num_classes()) {
      throw std::invalid_argument("IndexSampler: label " + std::to_string(y) +
                                  " outside histogram range");
    }
    pools_[static_cast<std::size_t>(y)].push_back(i);
  }
  for (std::size_t k = 0; k < pools_.size(); ++k) {
    if (static_cast<std::int64_t>(pools_[k].size()) != h.count(static_cast<int>(k))) {
      throw std::invalid_argument("IndexSampler: labels disagree with histogram at class " +
                                  std::to_string(k));
    }
  }
}

std::size_t IndexSampler::next() {
  const auto& pool = pools_[static_cast<std::size_t>(class_dist_(rng_))];
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  return pool[pick(rng_)];
}

std::vector<std::size_t> IndexSampler::next_batch(std::size_t batch_size) {
  if (batch_size == 0) throw std::invalid_argument("IndexSampler: batch_size must be >= 1");
  std::vector<std::size_t> out(batch_size);
  for (auto& i : out) i = next();
  return out;
}

}  // namespace balmix
