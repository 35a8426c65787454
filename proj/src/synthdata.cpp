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

#include "balmix/synthdata.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace balmix {

std::vector<std::int64_t> profile_counts(const SyntheticSpec& spec) {
  if (spec.num_classes < 2) throw std::invalid_argument("SyntheticSpec: need at least 2 classes");
  std::vector<std::int64_t> counts;
  if (const auto* e = std::get_if<ExponentialProfile>(&spec.profile)) {
    if (!(e->ratio >= 1.0)) throw std::invalid_argument("SyntheticSpec: ratio must be >= 1");
    if (spec.n_max < 1) throw std::invalid_argument("SyntheticSpec: n_max must be >= 1");
    const double last = static_cast<double>(spec.num_classes - 1);
    for (int k = 0; k < spec.num_classes; ++k) {
      counts.push_back(std::llround(static_cast<double>(spec.n_max) *
                                    std::pow(e->ratio, -static_cast<double>(k) / last)));
    }
  } else {
    counts = std::get<ExplicitCounts>(spec.profile).counts;
    if (static_cast<int>(counts.size()) != spec.num_classes) {
      throw std::invalid_argument("SyntheticSpec: explicit counts do not match num_classes");
    }
  }
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] < 1) {
      throw std::invalid_argument("SyntheticSpec: class " + std::to_string(k) +
                                  " has no examples after rounding");
    }
  }
  return counts;
}

Dataset generate(const SyntheticSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("SyntheticSpec: dim must be >= 1");
  if (!(spec.class_separation > 0.0) || !(spec.noise_sigma > 0.0)) {
    throw std::invalid_argument("SyntheticSpec: separation and noise must be > 0");
  }
  const auto counts = profile_counts(spec);
  Rng rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<std::vector<double>> means(counts.size(), std::vector<double>(spec.dim));
  for (auto& mean : means) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& v : mean) {
        v = normal(rng);
        norm += v * v;
      }
    } while (norm == 0.0);
    const double scale = spec.class_separation / std::sqrt(norm);
    for (double& v : mean) v *= scale;
  }

  Dataset ds;
  ds.dim = spec.dim;
  ds.num_classes = spec.num_classes;
  ds.provenance = "synthetic";
  for (std::size_t k = 0; k < counts.size(); ++k) {
    for (std::int64_t i = 0; i < counts[k]; ++i) {
      for (std::size_t j = 0; j < spec.dim; ++j) {
        ds.features.push_back(means[k][j] + spec.noise_sigma * normal(rng));
      }
      ds.labels.push_back(static_cast<Label>(k));
    }
  }
  return ds;
}

namespace {

std::vector<std::vector<std::size_t>> group_by_class(const Dataset& ds,
                                                     std::span<const std::size_t> rows) {
  std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(ds.num_classes));
  for (std::size_t i : rows) groups[static_cast<std::size_t>(ds.labels.at(i))].push_back(i);
  return groups;
}

std::vector<std::size_t> all_rows(const Dataset& ds) {
  std::vector<std::size_t> rows(ds.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return rows;
}

HoldoutSplit holdout_rows(const Dataset& ds, std::span<const std::size_t> rows,
                          double val_fraction, Rng& rng) {
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw std::invalid_argument("stratified_holdout: fraction must lie in (0, 1)");
  }
  HoldoutSplit out;
  auto groups = group_by_class(ds, rows);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    auto& g = groups[k];
    const auto n = static_cast<std::int64_t>(g.size());
    if (n < 2) {
      throw std::invalid_argument("stratified_holdout: class " + std::to_string(k) + " has " +
                                  std::to_string(n) + " rows; need 2 to cover both sides");
    }
    std::shuffle(g.begin(), g.end(), rng);
    const std::int64_t n_val =
        std::clamp<std::int64_t>(std::llround(static_cast<double>(n) * val_fraction), 1, n - 1);
    out.validation.insert(out.validation.end(), g.begin(), g.begin() + n_val);
    out.train.insert(out.train.end(), g.begin() + n_val, g.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.validation.begin(), out.validation.end());
  return out;
}

}  // namespace

HoldoutSplit stratified_holdout(const Dataset& ds, double val_fraction, std::uint64_t seed) {
  Rng rng(seed);
  const auto rows = all_rows(ds);
  return holdout_rows(ds, rows, val_fraction, rng);
}

FoldPlan stratified_kfold(const Dataset& ds, int folds, std::uint64_t seed, double val_fraction) {
  if (folds < 2) throw std::invalid_argument("stratified_kfold: need at least 2 folds");
  Rng rng(seed);
  auto groups = group_by_class(ds, all_rows(ds));
  std::vector<std::vector<std::size_t>> test(static_cast<std::size_t>(folds));
  std::size_t offset = 0;  // continue the round-robin across classes to even out fold sizes
  for (std::size_t k = 0; k < groups.size(); ++k) {
    auto& g = groups[k];
    if (static_cast<int>(g.size()) < folds) {
      throw std::invalid_argument("stratified_kfold: class " + std::to_string(k) + " has " +
                                  std::to_string(g.size()) + " rows, fewer than " +
                                  std::to_string(folds) + " folds");
    }
    std::shuffle(g.begin(), g.end(), rng);
    for (std::size_t i = 0; i < g.size(); ++i) {
      test[(offset + i) % static_cast<std::size_t>(folds)].push_back(g[i]);
    }
    offset = (offset + g.size()) % static_cast<std::size_t>(folds);
  }

  const auto rows = all_rows(ds);
  FoldPlan plan;
  for (int f = 0; f < folds; ++f) {
    auto& t = test[static_cast<std::size_t>(f)];
    std::sort(t.begin(), t.end());
    std::vector<std::size_t> rest;
    rest.reserve(ds.size() - t.size());
    std::set_difference(rows.begin(), rows.end(), t.begin(), t.end(),
                        std::back_inserter(rest));
    auto split = holdout_rows(ds, rest, val_fraction, rng);
    plan.folds.push_back({std::move(split.train), std::move(split.validation), std::move(t)});
  }
  return plan;
}

FoldPlan stratified_holdout_plan(const Dataset& ds, double test_fraction, std::uint64_t seed,
                                 double val_fraction) {
  Rng rng(seed);
  const auto rows = all_rows(ds);
  auto outer = holdout_rows(ds, rows, test_fraction, rng);
  auto inner = holdout_rows(ds, outer.train, val_fraction, rng);
  FoldPlan plan;
  plan.folds.push_back({std::move(inner.train), std::move(inner.validation),
                        std::move(outer.validation)});
  return plan;
}

std::string fold_plan_to_json(const FoldPlan& plan) {
  nlohmann::json j;
  j["schema"] = "balmix.fold_plan";
  j["schema_version"] = 1;
  j["folds"] = nlohmann::json::array();
  for (const auto& f : plan.folds) {
    j["folds"].push_back({{"train", f.train}, {"validation", f.validation}, {"test", f.test}});
  }
  return j.dump();
}

FoldPlan fold_plan_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("schema", "") != "balmix.fold_plan") {
    throw std::invalid_argument("fold plan: missing schema tag");
  }
  FoldPlan plan;
  for (const auto& f : j.at("folds")) {
    plan.folds.push_back({f.at("train").get<std::vector<std::size_t>>(),
                          f.at("validation").get<std::vector<std::size_t>>(),
                          f.at("test").get<std::vector<std::size_t>>()});
  }
  return plan;
}

void save_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_csv: cannot open " + path.string());
  for (std::size_t j = 0; j < ds.dim; ++j) out << 'f' << j << ',';
  out << "label\n";
  char buf[32];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.row(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << ',';
    }
    out << ds.labels[i] << '\n';
  }
  if (!out) throw std::runtime_error("save_csv: write failed for " + path.string());
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, int num_classes) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw CsvError("load_csv: empty file", 1);

  const auto header = split_fields(trim(line));
  if (header.size() < 2 || trim(header.back()) != "label") {
    throw CsvError("load_csv: line 1: header must be f0,...,f{d-1},label", 1);
  }
  for (std::size_t j = 0; j + 1 < header.size(); ++j) {
    if (trim(header[j]) != "f" + std::to_string(j)) {
      throw CsvError("load_csv: line 1: expected column 'f" + std::to_string(j) + "', got '" +
                         std::string(trim(header[j])) + "'",
                     1);
    }
  }

  Dataset ds;
  ds.dim = header.size() - 1;
  ds.provenance = path.string();
  std::size_t line_no = 1;
  Label max_label = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto fields = split_fields(body);
    if (fields.size() != header.size()) {
      throw CsvError("load_csv: line " + std::to_string(line_no) + ": expected " +
                         std::to_string(header.size()) + " columns, got " +
                         std::to_string(fields.size()),
                     line_no);
    }
    for (std::size_t j = 0; j < ds.dim; ++j) {
      const auto f = trim(fields[j]);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty() || !std::isfinite(v)) {
        throw CsvError("load_csv: line " + std::to_string(line_no) + ": column f" +
                           std::to_string(j) + " is not a finite number: '" + std::string(f) + "'",
                       line_no);
      }
      ds.features.push_back(v);
    }
    const auto lf = trim(fields.back());
    Label y = 0;
    const auto [ptr, ec] = std::from_chars(lf.data(), lf.data() + lf.size(), y);
    if (ec != std::errc() || ptr != lf.data() + lf.size() || lf.empty() || y < 0) {
      throw CsvError("load_csv: line " + std::to_string(line_no) +
                         ": label is not a non-negative integer: '" + std::string(lf) + "'",
                     line_no);
    }
    if (num_classes > 0 && y >= num_classes) {
      throw CsvError("load_csv: line " + std::to_string(line_no) + ": label " +
                         std::to_string(y) + " outside [0, " + std::to_string(num_classes) + ")",
                     line_no);
    }
    max_label = std::max(max_label, y);
    ds.labels.push_back(y);
  }
  ds.num_classes = num_classes > 0 ? num_classes : max_label + 1;
  (void)ds.histogram();  // rejects missing classes
  return ds;
}

}  // namespace balmix
