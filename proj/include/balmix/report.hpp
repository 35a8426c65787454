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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "balmix/harness.hpp"

namespace balmix {

enum class ReportFormat { csv, json, text };

ReportFormat report_format_from_string(std::string_view s);

/// Linear-interpolation quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);

/// One-sided sign test: P(X >= wins) for X ~ Binomial(trials, 1/2).
double sign_test_p(int wins, int trials);

struct MetricSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double mean = 0.0;
};

struct ReportRow {
  std::string method;
  std::string architecture;
  std::size_t n = 0;
  std::vector<MetricSummary> metrics;  // aligned with ReportTable::metrics
};

struct ReportTable {
  std::vector<std::string> metrics;
  std::vector<ReportRow> rows;
  std::vector<std::string> annotations;
};

/// Groups records by (method, architecture) and summarizes each metric over
/// seeds and folds. Rows follow the comparison order (sampling laws, losses,
/// MixUp, Balanced-MixUp by alpha); columns follow the metric order. Throws if
/// records disagree on their metric set.
ReportTable summarize(std::span<const ResultRecord> records);

std::string render(const ReportTable& table, ReportFormat format);

inline std::string report(std::span<const ResultRecord> records, ReportFormat format) {
  return render(summarize(records), format);
}

}  // namespace balmix
