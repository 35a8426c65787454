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
#include <sstream>

#include <json.hpp>

#include "balmix/report.hpp"

using namespace balmix;

namespace {

ResultRecord rec(const std::string& method, std::uint64_t seed,
                 std::map<std::string, double> metrics, const std::string& arch = "linear") {
  ResultRecord r;
  r.method = method;
  r.architecture = arch;
  r.seed = seed;
  r.metrics = std::move(metrics);
  return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == sep) out.emplace_back();
    else out.back() += c;
  }
  return out;
}

}  // namespace

TEST_CASE("quantiles") {
  CHECK(median({0.5, 0.6, 0.7}) == doctest::Approx(0.6));
  CHECK(median({0.7, 0.5, 0.6}) == doctest::Approx(0.6));
  CHECK(median({1.0, 2.0, 3.0, 4.0}) == 2.5);
  CHECK(quantile({1.0, 2.0, 3.0, 4.0, 5.0}, 0.25) == 2.0);
  CHECK(quantile({1.0, 2.0}, 0.25) == 1.25);
  CHECK(quantile({3.0}, 0.9) == 3.0);
  CHECK_THROWS_AS(quantile({}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(quantile({1.0}, 1.5), std::invalid_argument);
}

TEST_CASE("sign test") {
  CHECK(sign_test_p(10, 10) == doctest::Approx(1.0 / 1024.0));
  CHECK(sign_test_p(9, 10) == doctest::Approx(11.0 / 1024.0));
  CHECK(sign_test_p(8, 10) == doctest::Approx(56.0 / 1024.0));
  CHECK(sign_test_p(0, 10) == doctest::Approx(1.0));
  CHECK(sign_test_p(0, 0) == 1.0);
  CHECK_THROWS_AS(sign_test_p(11, 10), std::invalid_argument);
}

TEST_CASE("summary shape and ordering") {
  std::vector<ResultRecord> rs;
  const double vals[] = {0.5, 0.6, 0.7};
  for (std::uint64_t s = 0; s < 3; ++s) {
    rs.push_back(rec("balanced_mixup(0.2)", s, {{"mcc", vals[s]}, {"balanced_accuracy", 1.0}, {"macro_f1", 0.0}}));
    rs.push_back(rec("instance", s, {{"mcc", 0.1}, {"balanced_accuracy", vals[s]}, {"macro_f1", 0.5}}));
  }
  const auto t = summarize(rs);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.metrics == std::vector<std::string>{"mcc", "balanced_accuracy", "macro_f1"});
  CHECK(t.rows[0].method == "instance");
  CHECK(t.rows[1].method == "balanced_mixup(0.2)");
  CHECK(t.rows[1].n == 3);
  CHECK(t.rows[1].metrics[0].median == doctest::Approx(0.6));
  CHECK(t.rows[0].metrics[1].median == doctest::Approx(0.6));
  CHECK(t.rows[0].metrics[1].q1 == doctest::Approx(0.55));
  CHECK(t.rows[0].metrics[1].q3 == doctest::Approx(0.65));

  const auto csv = render(t, ReportFormat::csv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  const auto header = split(line, ',');
  CHECK(header.size() == 3 + 3 * 4);
  CHECK(header[3] == "mcc_median");
  std::vector<std::vector<std::string>> body;
  while (std::getline(in, line)) body.push_back(split(line, ','));
  REQUIRE(body.size() == 2);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t m = 0; m < 3; ++m) {
      const auto& s = t.rows[r].metrics[m];
      CHECK(std::stod(body[r][3 + 4 * m]) == s.median);
      CHECK(std::stod(body[r][4 + 4 * m]) == s.q1);
      CHECK(std::stod(body[r][5 + 4 * m]) == s.q3);
      CHECK(std::stod(body[r][6 + 4 * m]) == s.mean);
    }
  }

  const auto j = nlohmann::json::parse(render(t, ReportFormat::json));
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][1]["summary"]["mcc"]["median"].get<double>() == t.rows[1].metrics[0].median);

  const auto text = render(t, ReportFormat::text);
  CHECK(text.find("balanced_mixup(0.2)") != std::string::npos);
  CHECK(text.find("0.6000") != std::string::npos);
  CHECK(render(t, ReportFormat::csv) == csv);
}

TEST_CASE("rows group by architecture then method order") {
  std::vector<ResultRecord> rs;
  for (const char* m : {"balanced_mixup(0.3)", "class", "balanced_mixup(0.1)", "sqrt", "instance"}) {
    rs.push_back(rec(m, 0, {{"mcc", 0.1}}, "one_hidden(64)"));
    rs.push_back(rec(m, 0, {{"mcc", 0.1}}, "linear"));
  }
  const auto t = summarize(rs);
  std::vector<std::string> order;
  for (const auto& r : t.rows) order.push_back(r.architecture + " " + r.method);
  CHECK(order == std::vector<std::string>{
                     "linear instance", "linear class", "linear sqrt", "linear balanced_mixup(0.1)",
                     "linear balanced_mixup(0.3)", "one_hidden(64) instance", "one_hidden(64) class",
                     "one_hidden(64) sqrt", "one_hidden(64) balanced_mixup(0.1)",
                     "one_hidden(64) balanced_mixup(0.3)"});
}

TEST_CASE("best alpha annotation") {
  std::vector<ResultRecord> rs = {
      rec("balanced_mixup(0.1)", 0, {{"balanced_accuracy", 0.5}}),
      rec("balanced_mixup(0.2)", 0, {{"balanced_accuracy", 0.7}}),
      rec("balanced_mixup(0.3)", 0, {{"balanced_accuracy", 0.6}}),
  };
  const auto t = summarize(rs);
  REQUIRE(t.annotations.size() == 1);
  CHECK(t.annotations[0].find("best alpha by median balanced_accuracy is 0.2") != std::string::npos);
}

TEST_CASE("report errors") {
  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
  std::vector<ResultRecord> mixed = {rec("instance", 0, {{"mcc", 0.1}}),
                                     rec("class", 0, {{"mcc", 0.1}, {"macro_f1", 0.2}})};
  CHECK_THROWS_AS(summarize(mixed), std::invalid_argument);
  CHECK(report_format_from_string("text-table") == ReportFormat::text);
  CHECK(report_format_from_string("csv") == ReportFormat::csv);
  CHECK_THROWS_AS(report_format_from_string("xlsx"), std::invalid_argument);
}
