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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "balmix/synthdata.hpp"

using namespace balmix;

namespace {

SyntheticSpec long_tail(std::uint64_t seed = 3) {
  SyntheticSpec s;
  s.num_classes = 10;
  s.dim = 20;
  s.n_max = 500;
  s.profile = ExponentialProfile{100.0};
  s.seed = seed;
  return s;
}

std::vector<std::int64_t> class_counts(const Dataset& ds, const std::vector<std::size_t>& idx) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(ds.num_classes), 0);
  for (auto i : idx) ++c[static_cast<std::size_t>(ds.labels[i])];
  return c;
}

void check_stratified(const Dataset& ds, const std::vector<std::size_t>& idx) {
  const auto h = ds.histogram();
  const auto global = h.counts();
  const auto local = class_counts(ds, idx);
  for (std::size_t k = 0; k < global.size(); ++k) {
    const double expected = double(global[k]) * double(idx.size()) / double(ds.size());
    CHECK(std::abs(double(local[k]) - expected) <= 1.0 + 1e-9);
  }
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "balmix_test_synthdata";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("profile counts") {
  SyntheticSpec s;
  s.num_classes = 5;
  s.n_max = 1000;
  s.profile = ExponentialProfile{100.0};
  std::vector<std::int64_t> expected;
  for (int k = 0; k < 5; ++k) expected.push_back(std::llround(1000.0 * std::pow(100.0, -k / 4.0)));
  CHECK(expected == std::vector<std::int64_t>{1000, 316, 100, 32, 10});
  CHECK(profile_counts(s) == expected);

  s.num_classes = 2;
  s.profile = ExponentialProfile{1.0};
  CHECK(profile_counts(s) == std::vector<std::int64_t>{1000, 1000});

  s.profile = ExplicitCounts{{5, 1, 9}};
  s.num_classes = 3;
  CHECK(profile_counts(s) == std::vector<std::int64_t>{5, 1, 9});
  s.profile = ExplicitCounts{{5, 1}};
  CHECK_THROWS_AS(profile_counts(s), std::invalid_argument);

  SyntheticSpec tiny;
  tiny.num_classes = 3;
  tiny.n_max = 10;
  tiny.profile = ExponentialProfile{1000.0};
  CHECK_THROWS_AS(generate(tiny), std::invalid_argument);
}

TEST_CASE("generate") {
  const auto spec = long_tail();
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a == b);
  CHECK(a.features == b.features);  // bitwise
  const auto ha = a.histogram();
  CHECK(std::vector<std::int64_t>(ha.counts().begin(), ha.counts().end()) == profile_counts(spec));
  CHECK(a.features.size() == a.size() * 20);
  CHECK(ha.imbalance_ratio() == doctest::Approx(100.0));
  CHECK_FALSE(generate(long_tail(4)) == a);

  // Class means sit near norm class_separation.
  const auto counts = ha.counts();
  std::size_t offset = 0;
  const double big_n = double(counts[0]);
  std::vector<double> mean(20, 0.0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(counts[0]); ++i)
    for (std::size_t j = 0; j < 20; ++j) mean[j] += a.row(offset + i)[j] / big_n;
  double norm = 0.0;
  for (double m : mean) norm += m * m;
  CHECK(std::sqrt(norm) == doctest::Approx(spec.class_separation).epsilon(0.1));

  SyntheticSpec bad = spec;
  bad.noise_sigma = 0.0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad = spec;
  bad.class_separation = -1.0;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}

TEST_CASE("stratified_holdout") {
  SyntheticSpec s;
  s.num_classes = 2;
  s.profile = ExplicitCounts{{10, 10}};
  const auto ds = generate(s);
  const auto h = stratified_holdout(ds, 0.1, 1);
  CHECK(class_counts(ds, h.validation) == std::vector<std::int64_t>{1, 1});
  CHECK(class_counts(ds, h.train) == std::vector<std::int64_t>{9, 9});

  s.profile = ExplicitCounts{{4, 4}};
  const auto half = stratified_holdout(generate(s), 0.5, 1);
  CHECK(class_counts(generate(s), half.validation) == std::vector<std::int64_t>{2, 2});

  s.profile = ExplicitCounts{{20, 2}};
  const auto forced = stratified_holdout(generate(s), 0.1, 1);
  CHECK(class_counts(generate(s), forced.validation) == std::vector<std::int64_t>{2, 1});

  s.profile = ExplicitCounts{{20, 1}};
  CHECK_THROWS_AS(stratified_holdout(generate(s), 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(stratified_holdout(ds, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(stratified_holdout(ds, 1.0, 1), std::invalid_argument);
}

TEST_CASE("stratified_kfold") {
  SyntheticSpec s;
  s.num_classes = 2;
  s.profile = ExplicitCounts{{10, 5}};
  const auto small = generate(s);
  for (const auto& f : stratified_kfold(small, 5, 2).folds) {
    CHECK(class_counts(small, f.test) == std::vector<std::int64_t>{2, 1});
  }

  const auto ds = generate(long_tail());
  const auto plan = stratified_kfold(ds, 5, 11);
  REQUIRE(plan.folds.size() == 5);
  std::vector<int> seen_in_test(ds.size(), 0);
  for (const auto& f : plan.folds) {
    std::vector<std::size_t> all;
    all.insert(all.end(), f.train.begin(), f.train.end());
    all.insert(all.end(), f.validation.begin(), f.validation.end());
    all.insert(all.end(), f.test.begin(), f.test.end());
    std::sort(all.begin(), all.end());
    CHECK(all.size() == ds.size());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    CHECK(all.back() == ds.size() - 1);
    for (auto i : f.test) ++seen_in_test[i];
    check_stratified(ds, f.test);
    check_stratified(ds, f.train);
    check_stratified(ds, f.validation);
    for (auto c : class_counts(ds, f.validation)) CHECK(c >= 1);
    for (auto c : class_counts(ds, f.train)) CHECK(c >= 1);
  }
  CHECK(std::all_of(seen_in_test.begin(), seen_in_test.end(), [](int n) { return n == 1; }));

  const auto again = stratified_kfold(ds, 5, 11);
  CHECK(fold_plan_to_json(again) == fold_plan_to_json(plan));
  CHECK(fold_plan_to_json(stratified_kfold(ds, 5, 12)) != fold_plan_to_json(plan));
  CHECK(fold_plan_to_json(fold_plan_from_json(fold_plan_to_json(plan))) == fold_plan_to_json(plan));

  s.profile = ExplicitCounts{{10, 4}};
  CHECK_THROWS_AS(stratified_kfold(generate(s), 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(stratified_kfold(small, 1, 1), std::invalid_argument);
}

TEST_CASE("stratified_holdout_plan") {
  const auto ds = generate(long_tail());
  const auto plan = stratified_holdout_plan(ds, 0.2, 4);
  REQUIRE(plan.folds.size() == 1);
  const auto& f = plan.folds[0];
  CHECK(f.train.size() + f.validation.size() + f.test.size() == ds.size());
  for (auto c : class_counts(ds, f.test)) CHECK(c >= 1);
  check_stratified(ds, f.test);
}

TEST_CASE("csv round trip") {
  const auto ds = generate(long_tail());
  const auto path = scratch("rt.csv");
  save_csv(ds, path);
  const auto back = load_csv(path, 10);
  CHECK(back == ds);
  CHECK(load_csv(path) == ds);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("f0,f1,", 0) == 0);
  CHECK(header.size() > 6);
  CHECK(header.substr(header.size() - 9) == "f19,label");
}

TEST_CASE("csv errors name the line") {
  const auto path = scratch("bad.csv");
  auto line_of = [&](const std::string& text) -> std::size_t {
    write_file(path, text);
    try {
      load_csv(path);
    } catch (const CsvError& e) {
      CHECK(std::string(e.what()).find(std::to_string(e.line())) != std::string::npos);
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("f0,f1,label\n1,2,0\n3,1\n") == 3);
  CHECK(line_of("f0,f1,label\n1,2,0\n3,x,1\n") == 3);
  CHECK(line_of("f0,f1,label\n1,2,0\n3,4,1,5\n") == 3);
  CHECK(line_of("a,b,label\n1,2,0\n") == 1);
  CHECK(line_of("f0,f1,label\n1,2,-1\n") == 2);
  CHECK(line_of("f0,f1,label\n1,2,0.5\n") == 2);
  CHECK_THROWS(load_csv(scratch("does_not_exist.csv")));
  std::filesystem::remove_all(path.parent_path());
}
