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

#include "balmix/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace balmix {

ReportFormat report_format_from_string(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  if (s == "text" || s == "text-table") return ReportFormat::text;
  throw std::invalid_argument("unknown report format '" + std::string(s) + "'");
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q must be in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double sign_test_p(int wins, int trials) {
  if (trials < 0 || wins < 0 || wins > trials) {
    throw std::invalid_argument("sign_test_p: need 0 <= wins <= trials");
  }
  // Sum of C(trials, i) for i >= wins, scaled by 2^-trials, in log space.
  double p = 0.0;
  for (int i = wins; i <= trials; ++i) {
    p += std::exp(std::lgamma(trials + 1.0) - std::lgamma(i + 1.0) - std::lgamma(trials - i + 1.0) -
                  trials * std::log(2.0));
  }
  return std::min(p, 1.0);
}

namespace {

// Comparison order of a method label; unknown labels sort last by name.
std::tuple<int, double, std::string> method_key(const std::string& label) {
  try {
    const MethodSpec m = MethodSpec::parse(label);
    return {static_cast<int>(m.method), m.alpha, label};
  } catch (const std::exception&) {
    return {1000, 0.0, label};
  }
}

std::tuple<int, int, std::string> arch_key(const std::string& d) {
  try {
    const Architecture a = Architecture::parse(d);
    return {static_cast<int>(a.kind), a.hidden, d};
  } catch (const std::exception&) {
    return {1000, 0, d};
  }
}

std::tuple<int, std::string> metric_key(const std::string& name) {
  try {
    return {static_cast<int>(metric_from_string(name)), name};
  } catch (const std::exception&) {
    return {1000, name};
  }
}

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

ReportTable summarize(std::span<const ResultRecord> records) {
  if (records.empty()) throw std::invalid_argument("report: no records");
  std::set<std::string> metric_set;
  for (const auto& [name, _] : records.front().metrics) metric_set.insert(name);
  for (const auto& r : records) {
    std::set<std::string> mine;
    for (const auto& [name, _] : r.metrics) mine.insert(name);
    if (mine != metric_set) {
      throw std::invalid_argument("report: records carry different metric sets (method " +
                                  r.method + ", seed " + std::to_string(r.seed) + ")");
    }
  }

  ReportTable table;
  table.metrics.assign(metric_set.begin(), metric_set.end());
  std::sort(table.metrics.begin(), table.metrics.end(),
            [](const auto& a, const auto& b) { return metric_key(a) < metric_key(b); });

  using GroupKey = std::pair<std::string, std::string>;
  std::map<GroupKey, std::vector<const ResultRecord*>> groups;
  for (const auto& r : records) groups[{r.method, r.architecture}].push_back(&r);

  std::vector<GroupKey> keys;
  for (const auto& [k, _] : groups) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), [](const GroupKey& a, const GroupKey& b) {
    return std::tuple(arch_key(a.second), method_key(a.first)) <
           std::tuple(arch_key(b.second), method_key(b.first));
  });

  for (const auto& key : keys) {
    const auto& members = groups[key];
    ReportRow row{key.first, key.second, members.size(), {}};
    for (const auto& m : table.metrics) {
      std::vector<double> v;
      for (const auto* r : members) v.push_back(r->metrics.at(m));
      MetricSummary s;
      s.median = quantile(v, 0.5);
      s.q1 = quantile(v, 0.25);
      s.q3 = quantile(v, 0.75);
      s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
      row.metrics.push_back(s);
    }
    table.rows.push_back(std::move(row));
  }

  // For each architecture, which Balanced-MixUp alpha has the best median on
  // the leading metric. Informational only.
  if (!table.metrics.empty()) {
    std::map<std::string, std::pair<double, double>> best;  // arch -> (median, alpha)
    std::map<std::string, int> alpha_count;
    for (const auto& row : table.rows) {
      const auto [kind, alpha, _] = method_key(row.method);
      if (kind != static_cast<int>(Method::balanced_mixup)) continue;
      ++alpha_count[row.architecture];
      const double med = row.metrics.front().median;
      auto it = best.find(row.architecture);
      if (it == best.end() || med > it->second.first) best[row.architecture] = {med, alpha};
    }
    for (const auto& [arch, b] : best) {
      if (alpha_count[arch] < 2) continue;
      table.annotations.push_back("balanced_mixup on " + arch + ": best alpha by median " +
                                  table.metrics.front() + " is " + fmt(b.second, "%g") + " (" +
                                  fmt(b.first, "%.4f") + ")");
    }
  }
  return table;
}

std::string render(const ReportTable& table, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::csv: {
      out << "method,architecture,n";
      for (const auto& m : table.metrics) {
        out << ',' << m << "_median," << m << "_q1," << m << "_q3," << m << "_mean";
      }
      out << '\n';
      for (const auto& row : table.rows) {
        out << row.method << ',' << row.architecture << ',' << row.n;
        for (const auto& s : row.metrics) {
          out << ',' << fmt(s.median, "%.17g") << ',' << fmt(s.q1, "%.17g") << ','
              << fmt(s.q3, "%.17g") << ',' << fmt(s.mean, "%.17g");
        }
        out << '\n';
      }
      break;
    }
    case ReportFormat::json: {
      nlohmann::json j;
      j["metrics"] = table.metrics;
      j["rows"] = nlohmann::json::array();
      for (const auto& row : table.rows) {
        nlohmann::json summary;
        for (std::size_t i = 0; i < table.metrics.size(); ++i) {
          const auto& s = row.metrics[i];
          summary[table.metrics[i]] = {
              {"median", s.median}, {"q1", s.q1}, {"q3", s.q3}, {"mean", s.mean}};
        }
        j["rows"].push_back({{"method", row.method},
                             {"architecture", row.architecture},
                             {"n", row.n},
                             {"summary", summary}});
      }
      j["annotations"] = table.annotations;
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::text: {
      std::vector<std::vector<std::string>> cells;
      std::vector<std::string> header = {"method", "architecture", "n"};
      for (const auto& m : table.metrics) header.push_back(m + " median [IQR]");
      cells.push_back(header);
      for (const auto& row : table.rows) {
        std::vector<std::string> line = {row.method, row.architecture, std::to_string(row.n)};
        for (const auto& s : row.metrics) {
          line.push_back(fmt(s.median, "%.4f") + " [" + fmt(s.q1, "%.4f") + ", " +
                         fmt(s.q3, "%.4f") + "]");
        }
        cells.push_back(std::move(line));
      }
      std::vector<std::size_t> width(header.size(), 0);
      for (const auto& line : cells)
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
      for (std::size_t r = 0; r < cells.size(); ++r) {
        for (std::size_t c = 0; c < cells[r].size(); ++c) {
          if (c) out << "  ";
          out << cells[r][c] << std::string(width[c] - cells[r][c].size(), ' ');
        }
        out << '\n';
        if (r == 0) {
          std::size_t total = 0;
          for (auto w : width) total += w;
          out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
        }
      }
      for (const auto& a : table.annotations) out << "note: " << a << '\n';
      break;
    }
  }
  return out.str();
}

}  // namespace balmix
