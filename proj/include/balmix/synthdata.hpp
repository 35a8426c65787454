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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "balmix/dataset.hpp"

namespace balmix {

/// n_k = round(n_max * ratio^(-k / (K - 1))).
struct ExponentialProfile {
  double ratio = 1.0;
};

struct ExplicitCounts {
  std::vector<std::int64_t> counts;
};

using CountProfile = std::variant<ExponentialProfile, ExplicitCounts>;

/// Gaussian-mixture dataset description. Class k's mean is a random direction
/// scaled to norm class_separation; points add isotropic noise_sigma noise.
struct SyntheticSpec {
  int num_classes = 2;
  std::size_t dim = 2;
  std::int64_t n_max = 100;
  CountProfile profile = ExponentialProfile{1.0};
  double class_separation = 3.0;
  double noise_sigma = 1.0;
  std::uint64_t seed = 0;
};

std::vector<std::int64_t> profile_counts(const SyntheticSpec& spec);

/// Deterministic in spec.seed. Rows are grouped by class in label order.
Dataset generate(const SyntheticSpec& spec);

struct HoldoutSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

/// Per class, round(n_k * val_fraction) rows go to validation, clamped so
/// both sides keep at least one row of every class.
HoldoutSplit stratified_holdout(const Dataset& ds, double val_fraction, std::uint64_t seed);

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

struct FoldPlan {
  std::vector<Fold> folds;
};

/// Seeded per-class shuffle, then round-robin fold assignment. Each fold's
/// validation rows are carved from its non-test rows with the holdout rule.
FoldPlan stratified_kfold(const Dataset& ds, int folds, std::uint64_t seed,
                          double val_fraction = 0.1);

/// Single stratified train/validation/test split.
FoldPlan stratified_holdout_plan(const Dataset& ds, double test_fraction, std::uint64_t seed,
                                 double val_fraction = 0.1);

std::string fold_plan_to_json(const FoldPlan& plan);
FoldPlan fold_plan_from_json(const std::string& text);

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Header `f0,...,f{d-1},label`; features with 17 significant digits.
void save_csv(const Dataset& ds, const std::filesystem::path& path);

/// num_classes = 0 infers K as max label + 1. Every class must occur.
Dataset load_csv(const std::filesystem::path& path, int num_classes = 0);

}  // namespace balmix
