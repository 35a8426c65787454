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
#include <span>
#include <vector>

#include "balmix/common.hpp"

namespace balmix {

/// Per-class example counts over K >= 2 classes. Every class holds at least
/// one example; construction throws std::invalid_argument otherwise.
class ClassHistogram {
 public:
  explicit ClassHistogram(std::vector<std::int64_t> counts);

  /// Counts occurrences of each label in [0, k).
  static ClassHistogram from_labels(std::span<const Label> labels, int k);

  int num_classes() const noexcept { return static_cast<int>(counts_.size()); }
  std::int64_t total() const noexcept { return total_; }
  std::int64_t count(int k) const { return counts_.at(static_cast<std::size_t>(k)); }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }

  /// max_k n_k / min_k n_k.
  double imbalance_ratio() const noexcept;

  bool operator==(const ClassHistogram&) const = default;

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

}  // namespace balmix
