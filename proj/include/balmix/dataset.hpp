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
#include <span>
#include <string>
#include <vector>

#include "balmix/common.hpp"
#include "balmix/histogram.hpp"

namespace balmix {

/// N x d feature matrix (row-major) with one label per row.
struct Dataset {
  std::size_t dim = 0;
  int num_classes = 0;
  std::vector<double> features;
  std::vector<Label> labels;
  std::string provenance;

  std::size_t size() const noexcept { return labels.size(); }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(features).subspan(i * dim, dim);
  }

  ClassHistogram histogram() const { return ClassHistogram::from_labels(labels, num_classes); }

  Dataset subset(std::span<const std::size_t> indices) const {
    Dataset out{dim, num_classes, {}, {}, provenance};
    out.features.reserve(indices.size() * dim);
    out.labels.reserve(indices.size());
    for (std::size_t i : indices) {
      const auto r = row(i);
      out.features.insert(out.features.end(), r.begin(), r.end());
      out.labels.push_back(labels.at(i));
    }
    return out;
  }

  bool operator==(const Dataset& o) const {
    return dim == o.dim && num_classes == o.num_classes && features == o.features &&
           labels == o.labels;
  }
};

}  // namespace balmix
