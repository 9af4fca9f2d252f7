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

#ifndef SUMMETRICS_ANALYTICS_HPP_
#define SUMMETRICS_ANALYTICS_HPP_

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "summetrics/corpus.hpp"
#include "summetrics/score_table.hpp"

namespace summetrics::analytics {

// Tie-corrected rank correlation. nullopt (never 0) when either vector is
// constant. O(n log n) via merge-sort inversion counting.
std::optional<double> kendall_tau_b(const std::vector<double>& x,
                                    const std::vector<double>& y);

// Product-moment correlation; nullopt when either vector is constant.
std::optional<double> pearson_r(const std::vector<double>& x,
                                const std::vector<double>& y);

// Interval-scale alpha over units of ratings via the coincidence matrix;
// units with fewer than 2 ratings are ignored. nullopt when fewer than 2
// pairable values exist or expected disagreement is 0.
std::optional<double> krippendorff_alpha_interval(
    const std::vector<std::vector<double>>& units);

// Ratings per (system, example) unit for one dimension, units ordered by
// key, ratings by annotator id.
std::vector<std::vector<double>> pivot_units(
    const std::vector<corpus::HumanAnnotation>& annotations,
    const std::string& dimension);

using SystemScoreVector = std::vector<std::pair<std::string, double>>;

// Mean over examples per system (aggregate overrides win), sorted by id.
SystemScoreVector system_level_scores(const ScoreTable& table,
                                      const std::string& metric);
// Mean over annotators within (system, example), then over examples.
SystemScoreVector system_level_scores(
    const std::vector<corpus::HumanAnnotation>& annotations,
    const std::string& dimension);

enum class CorrelationLevel { kSystem, kSummary };
enum class Coefficient { kKendallTauB, kPearson };

struct CorrelationCell {
  std::optional<double> value;
  std::size_t n = 0;  // paired observations used
};

struct CorrelationReport {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<CorrelationCell>> cells;  // row-major
  std::string coefficient;
  std::string level;

  // Matrix with header row and column; undefined cells print "NA".
  std::string to_tsv() const;
  // Sidecar: coefficient kind, level, per-cell n, undefined-cell list.
  std::string meta_block() const;
};

// One correlation between a metric column and a human dimension. System
// level pairs per-system means; summary level pools (system, example)
// pairs across systems.
CorrelationCell metric_human_correlation(
    const ScoreTable& table,
    const std::vector<corpus::HumanAnnotation>& annotations,
    const std::string& metric, const std::string& dimension,
    CorrelationLevel level, Coefficient coefficient);

// All available metrics against all human dimensions.
CorrelationReport metric_human_report(
    const ScoreTable& table,
    const std::vector<corpus::HumanAnnotation>& annotations,
    CorrelationLevel level, Coefficient coefficient);

// Exactly symmetric with unit diagonal where defined.
CorrelationReport pairwise_metric_matrix(const ScoreTable& table,
                                         Coefficient coefficient,
                                         CorrelationLevel level);

double population_std(const std::vector<double>& values);

struct DispersionResult {
  // (system, example, population std) for units with >= 2 ratings
  std::vector<std::tuple<std::string, std::string, double>> per_example;
  std::vector<std::pair<std::string, std::string>> excluded;
  // fixed bins of width 0.25 over [0, 2]; the last bin includes 2.0
  std::array<long long, 8> histogram{};
};

DispersionResult score_dispersion(
    const std::vector<corpus::HumanAnnotation>& group,
    const std::string& dimension);

}  // namespace summetrics::analytics

#endif  // SUMMETRICS_ANALYTICS_HPP_
