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

#include "balmix/histogram.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace balmix {

ClassHistogram::ClassHistogram(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2) {
    throw std::invalid_argument("ClassHistogram: need at least 2 classes, got " +
                                std::to_string(counts_.size()));
  }
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (counts_[k] < 1) {
      throw std::invalid_argument("ClassHistogram: class " + std::to_string(k) +
                                  " is empty");
    }
  }
  total_ = std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

ClassHistogram ClassHistogram::from_labels(std::span<const Label> labels, int k) {
  if (k < 2) {
    throw std::invalid_argument("ClassHistogram: need at least 2 classes, got " +
                                std::to_string(k));
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Label y = labels[i];
    if (y < 0 || y >= k) {
      throw std::invalid_argument("ClassHistogram: label " + std::to_string(y) +
                                  " at position " + std::to_string(i) +
                                  " outside [0, " + std::to_string(k) + ")");
    }
    ++counts[static_cast<std::size_t>(y)];
  }
  return ClassHistogram(std::move(counts));
}

double ClassHistogram::imbalance_ratio() const noexcept {
  const auto [lo, hi] = std::minmax_element(counts_.begin(), counts_.end());
  return static_cast<double>(*hi) / static_cast<double>(*lo);
}

}  // namespace balmix
