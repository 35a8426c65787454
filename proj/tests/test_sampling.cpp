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

#include <cmath>
#include <random>

#include "balmix/sampling.hpp"

using namespace balmix;

namespace {

std::vector<Label> labels_for(const std::vector<std::int64_t>& counts) {
  std::vector<Label> out;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    out.insert(out.end(), static_cast<std::size_t>(counts[k]), static_cast<Label>(k));
  }
  return out;
}

std::vector<double> empirical(IndexSampler& s, std::span<const Label> labels, int k, int draws) {
  std::vector<double> freq(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < draws; ++i) freq[static_cast<std::size_t>(labels[s.next()])] += 1.0;
  for (double& f : freq) f /= draws;
  return freq;
}

}  // namespace

TEST_CASE("class_probabilities on the worked examples") {
  const ClassHistogram h({4, 1});
  const auto inst = class_probabilities(h, 1.0);
  CHECK(inst[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(inst[1] == doctest::Approx(0.2).epsilon(1e-15));
  const auto cls = class_probabilities(h, 0.0);
  CHECK(cls[0] == 0.5);
  CHECK(cls[1] == 0.5);
  const auto sq = class_probabilities(h, 0.5);
  CHECK(std::abs(sq[0] - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(sq[1] - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("class_probabilities rejects q outside [0, 1]") {
  const ClassHistogram h({4, 1});
  CHECK_THROWS_AS(class_probabilities(h, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(class_probabilities(h, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(class_probabilities(h, std::nan("")), std::invalid_argument);
}

TEST_CASE("probability vector and monotone majority mass") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 10);
    std::vector<std::int64_t> counts;
    for (int c = 0; c < k; ++c) counts.push_back(1 + static_cast<std::int64_t>(rng() % 1000));
    const ClassHistogram h(counts);
    const auto largest = static_cast<std::size_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    double prev = -1.0;
    for (double q = 0.0; q <= 1.0 + 1e-12; q += 0.125) {
      const auto p = class_probabilities(h, std::min(q, 1.0));
      double sum = 0.0;
      for (double v : p) {
        CHECK(v > 0.0);
        sum += v;
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
      CHECK(p[largest] >= prev - 1e-15);
      prev = p[largest];
    }
  }
}

TEST_CASE("sampler frequencies follow the sampling law") {
  const std::vector<std::int64_t> counts = {500, 120, 30, 7};
  const auto labels = labels_for(counts);
  const ClassHistogram h(counts);
  for (double q : {0.0, 0.5, 1.0}) {
    auto s = make_sampler(labels, h, q, 99);
    const auto freq = empirical(s, labels, 4, 100000);
    const auto p = class_probabilities(h, q);
    for (std::size_t k = 0; k < p.size(); ++k) CHECK(std::abs(freq[k] - p[k]) < 0.01);
  }
}

TEST_CASE("class-based sampling balances an extreme histogram") {
  const std::vector<std::int64_t> counts = {999, 1};
  const auto labels = labels_for(counts);
  auto s = make_sampler(labels, ClassHistogram(counts), 0.0, 3);
  const auto freq = empirical(s, labels, 2, 100000);
  CHECK(std::abs(freq[1] - 0.5) < 0.01);
}

TEST_CASE("next_batch contract") {
  const std::vector<std::int64_t> counts = {20, 1};
  const auto labels = labels_for(counts);
  const ClassHistogram h(counts);
  auto s = make_sampler(labels, h, 0.0, 11);
  const auto b1 = s.next_batch(8);
  CHECK(b1.size() == 8);
  for (auto i : b1) CHECK(i < labels.size());
  const auto b2 = s.next_batch(8);
  CHECK(b1 != b2);
  // The single minority row is drawn repeatedly (with replacement).
  int minority = 0;
  for (int i = 0; i < 50; ++i)
    for (auto idx : s.next_batch(8)) minority += labels[idx] == 1;
  CHECK(minority > 8);
  CHECK_THROWS_AS(s.next_batch(0), std::invalid_argument);
}

TEST_CASE("equal seeds give identical streams") {
  const std::vector<std::int64_t> counts = {50, 10, 3};
  const auto labels = labels_for(counts);
  const ClassHistogram h(counts);
  for (double q : {0.0, 0.5, 1.0}) {
    auto a = make_sampler(labels, h, q, 1234);
    auto b = make_sampler(labels, h, q, 1234);
    auto c = make_sampler(labels, h, q, 1235);
    const auto sa = a.next_batch(1000);
    CHECK(sa == b.next_batch(1000));
    CHECK(sa != c.next_batch(1000));
  }
}

TEST_CASE("make_sampler rejects labels inconsistent with the histogram") {
  const std::vector<Label> labels = {0, 0, 1};
  CHECK_THROWS_AS(make_sampler(labels, ClassHistogram({1, 2}), 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_sampler(labels, ClassHistogram({2, 2}), 1.0, 0), std::invalid_argument);
  CHECK_NOTHROW(make_sampler(labels, ClassHistogram({2, 1}), 1.0, 0));
}
