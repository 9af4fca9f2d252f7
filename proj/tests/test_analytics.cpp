// Copyright 2026 The Summetrics Authors.
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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracle_helpers.hpp"
#include "summetrics/analytics.hpp"
#include "summetrics/common.hpp"

using namespace summetrics;
using namespace summetrics::analytics;

namespace {

corpus::HumanAnnotation ann(const std::string& system_id,
                            const std::string& example_id,
                            const std::string& annotator_id, int score,
                            const std::string& cls = "expert", int round = 1) {
  corpus::HumanAnnotation a;
  a.system_id = system_id;
  a.example_id = example_id;
  a.annotator_id = annotator_id;
  a.annotator_class = cls;
  a.round = round;
  a.coherence = a.consistency = a.fluency = a.relevance = score;
  return a;
}

}  // namespace

TEST_CASE("kendall tau-b on an untied swap fixture") {
  auto got = kendall_tau_b({1, 2, 3, 4}, {1, 3, 2, 4});
  REQUIRE(got.has_value());
  CHECK(*got == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("kendall tau-b extremes") {
  CHECK(*kendall_tau_b({1, 2, 3}, {10, 20, 30}) == 1.0);
  CHECK(*kendall_tau_b({1, 2, 3}, {30, 20, 10}) == -1.0);
}

TEST_CASE("kendall tau-b is undefined for constant vectors") {
  CHECK_FALSE(kendall_tau_b({1, 1, 1}, {1, 2, 3}).has_value());
  CHECK_FALSE(kendall_tau_b({1, 2, 3}, {5, 5, 5}).has_value());
}

TEST_CASE("kendall tau-b input validation") {
  CHECK_THROWS_AS(kendall_tau_b({1, 2}, {1}), InputError);
  CHECK_THROWS_AS(kendall_tau_b({1}, {1}), InputError);
}

TEST_CASE("kendall tau-b handles ties like the pair enumeration") {
  auto got = kendall_tau_b({1, 2, 2, 3}, {1, 2, 3, 3});
  auto want = oracle::kendall_pairs({1, 2, 2, 3}, {1, 2, 3, 3});
  REQUIRE(got.has_value());
  REQUIRE(want.has_value());
  CHECK(*got == *want);
}

TEST_CASE("kendall tau-b equals pair enumeration on random tied vectors") {
  oracle::Rng rng(37);
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t n = 2 + rng.below(11);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(double(rng.below(4)));  // small range forces ties
      y.push_back(double(rng.below(4)));
    }
    auto got = kendall_tau_b(x, y);
    auto want = oracle::kendall_pairs(x, y);
    REQUIRE(got.has_value() == want.has_value());
    if (got) REQUIRE(*got == *want);
  }
}

TEST_CASE("pearson fixture") {
  auto got = pearson_r({1, 2, 3}, {1, 2, 4});
  REQUIRE(got.has_value());
  CHECK(*got == doctest::Approx(3.0 / std::sqrt(2.0 * 14.0 / 3.0))
                    .epsilon(1e-12));
  CHECK(*got == doctest::Approx(0.981981).epsilon(1e-5));
}

TEST_CASE("pearson extremes and degenerate input") {
  CHECK(*pearson_r({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  CHECK(*pearson_r({1, 2, 3}, {-2, -4, -6}) == doctest::Approx(-1.0));
  CHECK_FALSE(pearson_r({1, 1, 1}, {1, 2, 3}).has_value());
  CHECK_THROWS_AS(pearson_r({1}, {1}), InputError);
}

TEST_CASE("pearson is invariant under positive affine maps") {
  oracle::Rng rng(41);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<double> x, y;
    for (int i = 0; i < 8; ++i) {
      x.push_back(rng.real() * 10.0);
      y.push_back(rng.real() * 10.0);
    }
    auto base = pearson_r(x, y);
    std::vector<double> x2 = x;
    for (double& v : x2) v = 2.5 * v + 7.0;
    auto mapped = pearson_r(x2, y);
    REQUIRE(base.has_value());
    REQUIRE(mapped.has_value());
    CHECK(*mapped == doctest::Approx(*base).epsilon(1e-12));
  }
}

TEST_CASE("krippendorff alpha is exactly 1 on perfect cross-unit spread") {
  auto got = krippendorff_alpha_interval({{2, 2}, {5, 5}});
  REQUIRE(got.has_value());
  CHECK(*got == 1.0);
}

TEST_CASE("krippendorff alpha is 0 when observed equals expected") {
  auto got = krippendorff_alpha_interval({{1, 3}, {1, 1}});
  REQUIRE(got.has_value());
  CHECK(*got == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("krippendorff alpha undefined cases") {
  // single pairable unit of identical values: expected disagreement is 0
  CHECK_FALSE(krippendorff_alpha_interval({{3, 3}, {4}}).has_value());
  // fewer than two pairable values in total
  CHECK_FALSE(krippendorff_alpha_interval({{1}, {2}}).has_value());
  CHECK_FALSE(krippendorff_alpha_interval({}).has_value());
}

TEST_CASE("krippendorff alpha ignores units with a single rating") {
  auto with = krippendorff_alpha_interval({{2, 2}, {5, 5}, {4}});
  auto without = krippendorff_alpha_interval({{2, 2}, {5, 5}});
  REQUIRE(with.has_value());
  CHECK(*with == *without);
}

TEST_CASE("krippendorff alpha matches the direct pairwise formula") {
  oracle::Rng rng(43);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::vector<double>> units;
    std::size_t n_units = 2 + rng.below(5);
    for (std::size_t u = 0; u < n_units; ++u) {
      std::vector<double> ratings;
      std::size_t m = rng.below(6);
      for (std::size_t r = 0; r < m; ++r)
        ratings.push_back(double(1 + rng.below(5)));
      units.push_back(ratings);
    }
    auto got = krippendorff_alpha_interval(units);
    auto want = oracle::krippendorff_pairs(units);
    REQUIRE(got.has_value() == want.has_value());
    if (got) CHECK(*got == doctest::Approx(*want).epsilon(1e-12));
  }
}

TEST_CASE("krippendorff alpha is invariant under unit reordering") {
  std::vector<std::vector<double>> units = {{1, 2, 2}, {4, 5}, {3, 3, 4}};
  auto base = krippendorff_alpha_interval(units);
  std::vector<std::vector<double>> reversed(units.rbegin(), units.rend());
  auto flipped = krippendorff_alpha_interval(reversed);
  REQUIRE(base.has_value());
  CHECK(*base == doctest::Approx(*flipped).epsilon(1e-12));
}

TEST_CASE("pivot_units groups ratings by system and example") {
  std::vector<corpus::HumanAnnotation> anns = {
      ann("s1", "e1", "a1", 2), ann("s1", "e1", "a2", 3),
      ann("s1", "e2", "a1", 5), ann("s2", "e1", "a1", 4),
  };
  auto units = pivot_units(anns, "coherence");
  REQUIRE(units.size() == 3);
  CHECK(units[0] == std::vector<double>{2, 3});  // (s1, e1)
  CHECK(units[1] == std::vector<double>{5});     // (s1, e2)
  CHECK(units[2] == std::vector<double>{4});     // (s2, e1)
}

TEST_CASE("pivot_units keeps rounds as distinct rater slots") {
  std::vector<corpus::HumanAnnotation> anns = {
      ann("s1", "e1", "a1", 2, "expert", 1),
      ann("s1", "e1", "a1", 5, "expert", 2),
  };
  auto units = pivot_units(anns, "coherence");
  REQUIRE(units.size() == 1);
  CHECK(units[0].size() == 2);
}

TEST_CASE("population_std fixture") {
  CHECK(population_std({2, 3, 4}) ==
        doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK(population_std({5, 5, 5}) == 0.0);
}

TEST_CASE("score_dispersion bins per-unit deviations") {
  std::vector<corpus::HumanAnnotation> group = {
      ann("s1", "e1", "a1", 2), ann("s1", "e1", "a2", 3),
      ann("s1", "e1", "a3", 4),  // std = sqrt(2/3) ~ 0.816 -> bin 3
      ann("s1", "e2", "a1", 5), ann("s1", "e2", "a2", 5),  // std 0 -> bin 0
      ann("s2", "e1", "a1", 1),  // single rating: excluded
  };
  DispersionResult got = score_dispersion(group, "coherence");
  REQUIRE(got.per_example.size() == 2);
  CHECK(got.excluded.size() == 1);
  CHECK(got.histogram[0] == 1);
  CHECK(got.histogram[3] == 1);
  long long total = 0;
  for (long long c : got.histogram) total += c;
  CHECK(total == 2);
}

TEST_CASE("system_level_scores averages the table per system") {
  ScoreTable table;
  table.set("sysA", "e1", "rouge_1", 0.2);
  table.set("sysA", "e2", "rouge_1", 0.4);
  table.set("sysB", "e1", "rouge_1", 0.9);
  auto scores = system_level_scores(table, "rouge_1");
  REQUIRE(scores.size() == 2);
  CHECK(scores[0].first == "sysA");
  CHECK(scores[0].second == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(scores[1].second == doctest::Approx(0.9));
}

TEST_CASE("system_level_scores averages annotators then examples") {
  std::vector<corpus::HumanAnnotation> anns = {
      ann("s1", "e1", "a1", 2), ann("s1", "e1", "a2", 4),  // unit mean 3
      ann("s1", "e2", "a1", 5),                            // unit mean 5
      ann("s2", "e1", "a1", 1),
  };
  auto scores = system_level_scores(anns, "fluency");
  REQUIRE(scores.size() == 2);
  CHECK(scores[0].first == "s1");
  CHECK(scores[0].second == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(scores[1].second == doctest::Approx(1.0));
}

TEST_CASE("metric_human_correlation finds a perfect system-level tau") {
  ScoreTable table;
  std::vector<corpus::HumanAnnotation> anns;
  // three systems whose metric means and human means rank identically
  const char* systems[] = {"s1", "s2", "s3"};
  for (int s = 0; s < 3; ++s) {
    for (int e = 0; e < 4; ++e) {
      std::string ex = "e" + std::to_string(e);
      table.set(systems[s], ex, "rouge_1", 0.1 * (s + 1) + 0.01 * e);
      anns.push_back(ann(systems[s], ex, "a1", s + e % 2 + 1));
    }
  }
  CorrelationCell cell =
      metric_human_correlation(table, anns, "rouge_1", "coherence",
                               CorrelationLevel::kSystem,
                               Coefficient::kKendallTauB);
  REQUIRE(cell.value.has_value());
  CHECK(*cell.value == 1.0);
  CHECK(cell.n == 3);
}

TEST_CASE("summary-level correlation pools example pairs") {
  ScoreTable table;
  std::vector<corpus::HumanAnnotation> anns;
  // scores and ratings agree within each system but systems are offset
  int rating[2][3] = {{1, 3, 5}, {2, 3, 4}};
  for (int s = 0; s < 2; ++s) {
    std::string sys = "s" + std::to_string(s);
    for (int e = 0; e < 3; ++e) {
      std::string ex = "e" + std::to_string(e);
      table.set(sys, ex, "rouge_1", rating[s][e] * 0.1);
      anns.push_back(ann(sys, ex, "a1", rating[s][e]));
    }
  }
  CorrelationCell cell = metric_human_correlation(
      table, anns, "rouge_1", "relevance", CorrelationLevel::kSummary,
      Coefficient::kKendallTauB);
  REQUIRE(cell.value.has_value());
  CHECK(*cell.value == doctest::Approx(1.0));
  CHECK(cell.n == 6);
}

TEST_CASE("correlation with fewer than two pairs is undefined") {
  ScoreTable table;
  table.set("s1", "e1", "rouge_1", 0.5);
  std::vector<corpus::HumanAnnotation> anns = {ann("s1", "e1", "a1", 3)};
  CorrelationCell cell = metric_human_correlation(
      table, anns, "rouge_1", "coherence", CorrelationLevel::kSystem,
      Coefficient::kKendallTauB);
  CHECK_FALSE(cell.value.has_value());
  CHECK(cell.n == 1);
}

TEST_CASE("metric_human_report covers all metrics and dimensions") {
  ScoreTable table;
  table.set("s1", "e1", "rouge_1", 0.1);
  table.set("s2", "e1", "rouge_1", 0.2);
  table.set("s1", "e1", "length", 10);
  table.set("s2", "e1", "length", 12);
  std::vector<corpus::HumanAnnotation> anns = {
      ann("s1", "e1", "a1", 2),
      ann("s2", "e1", "a1", 4),
  };
  CorrelationReport report =
      metric_human_report(table, anns, CorrelationLevel::kSystem,
                          Coefficient::kKendallTauB);
  CHECK(report.row_labels == std::vector<std::string>{"length", "rouge_1"});
  REQUIRE(report.col_labels.size() == 4);
  REQUIRE(report.cells.size() == 2);
  CHECK(report.cells[0].size() == 4);
  // two systems: every defined tau is +/-1
  for (const auto& row : report.cells)
    for (const auto& cell : row)
      if (cell.value) CHECK(std::abs(*cell.value) == 1.0);

  std::string tsv = report.to_tsv();
  CHECK(tsv.find("coherence") != std::string::npos);
  CHECK(tsv.find("rouge_1") != std::string::npos);
  std::string meta = report.meta_block();
  CHECK(meta.find("kendall_tau_b") != std::string::npos);
  CHECK(meta.find("system") != std::string::npos);
}

TEST_CASE("pairwise metric matrix is symmetric with unit diagonal") {
  ScoreTable table;
  oracle::Rng rng(47);
  for (int s = 0; s < 3; ++s)
    for (int e = 0; e < 5; ++e) {
      std::string sys = "s" + std::to_string(s);
      std::string ex = "e" + std::to_string(e);
      table.set(sys, ex, "m1", rng.real());
      table.set(sys, ex, "m2", rng.real());
      table.set(sys, ex, "m3", rng.real());
    }
  CorrelationReport report = pairwise_metric_matrix(
      table, Coefficient::kPearson, CorrelationLevel::kSummary);
  REQUIRE(report.row_labels.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(report.cells[i][i].value.has_value());
    CHECK(*report.cells[i][i].value == 1.0);
    for (std::size_t j = 0; j < 3; ++j) {
      REQUIRE(report.cells[i][j].value.has_value() ==
              report.cells[j][i].value.has_value());
      if (report.cells[i][j].value)
        CHECK(*report.cells[i][j].value == *report.cells[j][i].value);
    }
  }
}

TEST_CASE("undefined correlation cells render as NA") {
  ScoreTable table;
  // constant metric column makes tau undefined
  table.set("s1", "e1", "m1", 0.5);
  table.set("s2", "e1", "m1", 0.5);
  table.set("s1", "e1", "m2", 0.1);
  table.set("s2", "e1", "m2", 0.9);
  CorrelationReport report = pairwise_metric_matrix(
      table, Coefficient::kKendallTauB, CorrelationLevel::kSystem);
  std::string tsv = report.to_tsv();
  CHECK(tsv.find("NA") != std::string::npos);
  std::string meta = report.meta_block();
  CHECK(meta.find("undefined") != std::string::npos);
}
