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

#include "balmix/losses.hpp"
#include "grad_oracle.hpp"

using namespace balmix;

namespace {

std::vector<double> random_logits(std::mt19937_64& rng, std::size_t k, double scale = 3.0) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<double> z(k);
  for (auto& v : z) v = n(rng);
  return z;
}

std::vector<double> random_soft(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> y(k, 0.0);
  const auto a = rng() % k, b = rng() % k;
  const double lambda = u(rng);
  y[a] += lambda;
  y[b] += 1.0 - lambda;
  return y;
}

std::vector<double> one_hot(std::size_t k, std::size_t label) {
  std::vector<double> y(k, 0.0);
  y[label] = 1.0;
  return y;
}

}  // namespace

TEST_CASE("softmax") {
  const std::vector<double> zeros = {0.0, 0.0, 0.0};
  for (double p : softmax(zeros)) CHECK(p == doctest::Approx(1.0 / 3.0));

  const std::vector<double> big = {1000.0, 0.0};
  const auto p = softmax(big);
  CHECK(std::isfinite(p[0]));
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] < 1e-300);
  const std::vector<double> low = {-1000.0, 0.0};
  CHECK(softmax(low)[1] == doctest::Approx(1.0));

  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto z = random_logits(rng, 5);
    const auto a = softmax(z);
    for (auto& v : z) v += 17.25;
    const auto b = softmax(z);
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-14);
  }

  const std::vector<double> bad = {0.0, std::nan("")};
  CHECK_THROWS_AS(softmax(bad), std::invalid_argument);
  const std::vector<double> inf = {0.0, INFINITY};
  CHECK_THROWS_AS(softmax(inf), std::invalid_argument);
}

TEST_CASE("cross_entropy_soft") {
  const std::vector<double> uniform = {0.3, 0.3};
  const std::vector<double> half = {0.5, 0.5};
  CHECK(cross_entropy_soft(uniform, half) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  const std::vector<double> confident = {50.0, 0.0};
  CHECK(cross_entropy_soft(confident, one_hot(2, 0)) < 1e-20);

  // Clamped at the probability floor rather than infinite.
  CHECK(cross_entropy_soft(confident, one_hot(2, 1)) == doctest::Approx(-std::log(kProbabilityFloor)));

  const std::vector<double> not_prob = {0.7, 0.7};
  CHECK_THROWS_AS(cross_entropy_soft(uniform, not_prob), std::invalid_argument);
  const std::vector<double> negative = {1.5, -0.5};
  CHECK_THROWS_AS(cross_entropy_soft(uniform, negative), std::invalid_argument);
  const std::vector<double> wrong_k = {1.0};
  CHECK_THROWS_AS(cross_entropy_soft(uniform, wrong_k), std::invalid_argument);
}

TEST_CASE("cross_entropy_soft is affine in the label") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 2 + rng() % 8;
    const auto z = random_logits(rng, k);
    const auto ya = one_hot(k, rng() % k);
    const auto yb = one_hot(k, rng() % k);
    const double lambda = u(rng);
    std::vector<double> mixed(k);
    for (std::size_t j = 0; j < k; ++j) mixed[j] = lambda * ya[j] + (1.0 - lambda) * yb[j];
    const double lhs = cross_entropy_soft(z, mixed);
    const double rhs = lambda * cross_entropy_soft(z, ya) + (1.0 - lambda) * cross_entropy_soft(z, yb);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("focal_loss") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto z = random_logits(rng, 4);
    const auto y = static_cast<Label>(rng() % 4);
    CHECK(focal_loss(z, y, 0.0) == cross_entropy_soft(z, one_hot(4, static_cast<std::size_t>(y))));
  }

  // p_t = 9 / (9 + 1) = 0.9
  const std::vector<double> z = {std::log(9.0), 0.0};
  const double expected = 0.1 * 0.1 * -std::log(0.9);
  CHECK(focal_loss(z, 0, 2.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.001054).epsilon(1e-3));

  double prev_ratio = 1.0;
  for (double margin : {1.0, 2.0, 4.0, 8.0}) {
    const std::vector<double> zz = {margin, 0.0};
    const double ratio = focal_loss(zz, 0, 2.0) / focal_loss(zz, 0, 0.0);
    CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
  }
  CHECK(prev_ratio < 1e-6);

  CHECK_THROWS_AS(focal_loss(z, 2, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(focal_loss(z, -1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(focal_loss(z, 0, -1.0), std::invalid_argument);
}

TEST_CASE("class_balanced_weights") {
  const ClassHistogram two({4, 1});
  for (double w : class_balanced_weights(two, 0.0)) CHECK(w == doctest::Approx(1.0));

  // beta -> 1 approaches inverse frequency [1/4, 1], normalized to sum 2.
  const auto limit = class_balanced_weights(two, 1.0 - 1e-10);
  CHECK(limit[0] == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(limit[1] == doctest::Approx(1.6).epsilon(1e-6));

  // Closed form evaluated with pow, independent of the production path.
  const ClassHistogram skewed({100, 1});
  const double raw0 = (1.0 - 0.99) / (1.0 - std::pow(0.99, 100));
  const double raw1 = (1.0 - 0.99) / (1.0 - 0.99);
  CHECK(raw0 == doctest::Approx(0.01 / 0.6340).epsilon(1e-3));
  CHECK(raw0 >= 1.0 / 100.0);  // 1 - beta^n <= n (1 - beta)
  const auto w = class_balanced_weights(skewed, 0.99);
  CHECK(w[0] == doctest::Approx(2.0 * raw0 / (raw0 + raw1)).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(2.0 * raw1 / (raw0 + raw1)).epsilon(1e-12));
  CHECK(w[0] + w[1] == doctest::Approx(2.0));

  CHECK_THROWS_AS(class_balanced_weights(two, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(class_balanced_weights(two, -0.1), std::invalid_argument);
}

TEST_CASE("class_balanced_weights are monotone non-increasing in the count") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 2 + rng() % 8;
    std::vector<std::int64_t> counts(k);
    for (auto& c : counts) c = 1 + static_cast<std::int64_t>(rng() % 2000);
    const ClassHistogram h(counts);
    for (double beta : {0.0, 0.5, 0.9, 0.99, 0.999, 0.9999}) {
      const auto w = class_balanced_weights(h, beta);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
          if (counts[a] < counts[b]) CHECK(w[a] >= w[b] * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("class_balanced_loss") {
  std::mt19937_64 rng(5);
  const std::vector<double> ones(4, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto z = random_logits(rng, 4);
    const auto y = static_cast<Label>(rng() % 4);
    const double ce = cross_entropy_soft(z, one_hot(4, static_cast<std::size_t>(y)));
    CHECK(class_balanced_loss(z, y, ones) == doctest::Approx(ce).epsilon(1e-14));
    auto doubled = ones;
    doubled[static_cast<std::size_t>(y)] = 2.0;
    CHECK(class_balanced_loss(z, y, doubled) == doctest::Approx(2.0 * ce).epsilon(1e-14));
  }
  const std::vector<double> z = {0.0, 1.0};
  CHECK_THROWS_AS(class_balanced_loss(z, 2, ones), std::invalid_argument);
  const std::vector<double> w2 = {1.0, 1.0};
  CHECK_THROWS_AS(class_balanced_loss(z, 5, w2), std::invalid_argument);
}

TEST_CASE("loss_with_gradient matches the scalar losses and finite differences") {
  std::mt19937_64 rng(6);
  const ClassHistogram h({300, 40, 9, 2});
  LossConfig ce;
  LossConfig focal;
  focal.kind = LossKind::focal;
  focal.gamma = 2.0;
  LossConfig cb;
  cb.kind = LossKind::class_balanced;
  cb.class_weights = class_balanced_weights(h, 0.999);

  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto z = random_logits(rng, 4);
    const auto label = static_cast<Label>(rng() % 4);
    const auto hard = one_hot(4, static_cast<std::size_t>(label));
    const auto soft = random_soft(rng, 4);

    CHECK(loss_with_gradient(z, hard, ce).value == doctest::Approx(cross_entropy_soft(z, hard)));
    CHECK(loss_with_gradient(z, hard, focal).value == doctest::Approx(focal_loss(z, label, 2.0)));
    CHECK(loss_with_gradient(z, hard, cb).value ==
          doctest::Approx(class_balanced_loss(z, label, cb.class_weights)));

    for (const LossConfig* cfg : {&ce, &focal, &cb}) {
      for (const auto* target : {&hard, &soft}) {
        const auto analytic = loss_with_gradient(z, *target, *cfg);
        CHECK(analytic.value >= 0.0);
        const auto numeric = oracle::numeric_gradient(
            [&](const std::vector<double>& zz) { return loss_with_gradient(zz, *target, *cfg).value; }, z);
        worst = std::max(worst, oracle::relative_error(analytic.gradient, numeric));
      }
    }
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("focal gradient with gamma below one stays finite at saturation") {
  LossConfig focal;
  focal.kind = LossKind::focal;
  focal.gamma = 0.5;
  const std::vector<double> z = {60.0, 0.0};
  const auto r = loss_with_gradient(z, one_hot(2, 0), focal);
  for (double g : r.gradient) CHECK(std::isfinite(g));
}

TEST_CASE("LossValue and LossConfig") {
  const auto v = LossValue::from_per_example({1.0, 2.0, 4.5});
  CHECK(std::abs(v.scalar - 2.5) < 1e-10);
  CHECK(v.per_example.size() == 3);

  LossConfig bad;
  bad.gamma = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.gamma = 2.0;
  bad.beta = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  LossConfig missing;
  missing.kind = LossKind::class_balanced;
  CHECK_THROWS_AS(missing.validate(), std::invalid_argument);
  CHECK(loss_kind_from_string(to_string(LossKind::focal)) == LossKind::focal);
  CHECK_THROWS_AS(loss_kind_from_string("hinge"), std::invalid_argument);
}
