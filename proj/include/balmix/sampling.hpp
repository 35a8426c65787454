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
#include <random>
#include <span>
#include <vector>

#include "balmix/common.hpp"
#include "balmix/histogram.hpp"

namespace balmix {

/// Class sampling law p_j = n_j^q / sum_k n_k^q, for q in [0, 1].
/// q = 1 is instance-based sampling, q = 0 class-based, q = 1/2 square-root.
std::vector<double> class_probabilities(const ClassHistogram& h, double q);

struct SamplingStrategy {
  double q = 1.0;
  std::vector<double> class_probs;

  static SamplingStrategy from_histogram(const ClassHistogram& h, double q) {
    return {q, class_probabilities(h, q)};
  }
};

/// Two-stage sampler: draw a class with probability p_j, then a uniform row of
/// that class, with replacement. Single-owner: do not advance from two threads.
class IndexSampler {
 public:
  IndexSampler(std::span<const Label> labels, const ClassHistogram& h, double q,
               std::uint64_t seed);

  std::size_t next();
  std::vector<std::size_t> next_batch(std::size_t batch_size);

  const SamplingStrategy& strategy() const noexcept { return strategy_; }
  std::size_t dataset_size() const noexcept { return dataset_size_; }

 private:
  SamplingStrategy strategy_;
  std::vector<std::vector<std::size_t>> pools_;
  std::size_t dataset_size_ = 0;
  Rng rng_;
  std::discrete_distribution<int> class_dist_;
};

inline IndexSampler make_sampler(std::span<const Label> labels, const ClassHistogram& h,
                                 double q, std::uint64_t seed) {
  return IndexSampler(labels, h, q, seed);
}

}  // namespace balmix
