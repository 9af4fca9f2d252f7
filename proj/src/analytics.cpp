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
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "summetrics/analytics.hpp"
#include "summetrics/common.hpp"

namespace summetrics::analytics {
namespace {

// pairs i < j with values[i] > values[j], by merge sort
long long count_inversions(std::vector<double>* values) {
  std::vector<double>& v = *values;
  std::vector<double> buffer(v.size());
  long long swaps = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t left = 0; left + width < v.size(); left += 2 * width) {
      std::size_t mid = left + width;
      std::size_t right = std::min(mid + width, v.size());
      std::size_t i = left, j = mid, k = left;
      while (i < mid && j < right) {
        if (v[j] < v[i]) {
          swaps += static_cast<long long>(mid - i);
          buffer[k++] = v[j++];
        } else {
          buffer[k++] = v[i++];
        }
      }
      while (i < mid) buffer[k++] = v[i++];
      while (j < right) buffer[k++] = v[j++];
      std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(left),
                buffer.begin() + static_cast<std::ptrdiff_t>(right),
                v.begin() + static_cast<std::ptrdiff_t>(left));
    }
  }
  return swaps;
}

long long tie_pairs(const std::vector<double>& sorted) {
  long long pairs = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    long long run = static_cast<long long>(j - i);
    pairs += run * (run - 1) / 2;
    i = j;
  }
  return pairs;
}

}  // namespace

std::optional<double> kendall_tau_b(const std::vector<double>& x,
                                    const std::vector<double>& y) {
  if (x.size() != y.size())
    throw InputError("kendall_tau_b: length mismatch");
  std::size_t n = x.size();
  if (n < 2) throw InputError("kendall_tau_b: need at least 2 observations");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });
  // tie counts over pairs: x ties, joint ties, then y ties globally
  long long xtie = 0, ntie_xy = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && x[idx[j]] == x[idx[i]]) ++j;
    long long run = static_cast<long long>(j - i);
    xtie += run * (run - 1) / 2;
    std::size_t a = i;
    while (a < j) {
      std::size_t b = a;
      while (b < j && y[idx[b]] == y[idx[a]]) ++b;
      long long joint = static_cast<long long>(b - a);
      ntie_xy += joint * (joint - 1) / 2;
      a = b;
    }
    i = j;
  }
  std::vector<double> y_in_x_order(n), y_sorted(y);
  for (std::size_t k = 0; k < n; ++k) y_in_x_order[k] = y[idx[k]];
  std::sort(y_sorted.begin(), y_sorted.end());
  long long ytie = tie_pairs(y_sorted);
  long long swaps = count_inversions(&y_in_x_order);
  long long tot = static_cast<long long>(n) *
                  (static_cast<long long>(n) - 1) / 2;
  long long den1 = tot - xtie, den2 = tot - ytie;
  if (den1 == 0 || den2 == 0) return std::nullopt;  // constant vector
  long long num = tot - xtie - ytie + ntie_xy - 2 * swaps;
  return static_cast<double>(num) /
         std::sqrt(static_cast<double>(den1) * static_cast<double>(den2));
}

std::optional<double> pearson_r(const std::vector<double>& x,
                                const std::vector<double>& y) {
  if (x.size() != y.size()) throw InputError("pearson_r: length mismatch");
  std::size_t n = x.size();
  if (n < 2) throw InputError("pearson_r: need at least 2 observations");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::optional<double> krippendorff_alpha_interval(
    const std::vector<std::vector<double>>& units) {
  std::map<double, std::size_t> value_index;
  for (const auto& unit : units) {
    if (unit.size() < 2) continue;
    for (double v : unit) value_index.emplace(v, 0);
  }
  std::size_t k = 0;
  for (auto& [value, index] : value_index) index = k++;
  std::vector<double> values;
  for (const auto& [value, index] : value_index) values.push_back(value);

  std::vector<std::vector<double>> o(k, std::vector<double>(k, 0.0));
  for (const auto& unit : units) {
    std::size_t m = unit.size();
    if (m < 2) continue;
    double w = 1.0 / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        o[value_index[unit[i]]][value_index[unit[j]]] += w;
      }
  }
  std::vector<double> n_c(k, 0.0);
  double n = 0.0;
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t d = 0; d < k; ++d) {
      n_c[c] += o[c][d];
      n += o[c][d];
    }
  if (n < 2.0) return std::nullopt;  // fewer than 2 pairable values
  double observed = 0.0, expected = 0.0;
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t d = 0; d < k; ++d) {
      double delta = (values[c] - values[d]) * (values[c] - values[d]);
      observed += o[c][d] * delta;
      expected += n_c[c] * n_c[d] * delta;
    }
  if (expected == 0.0) return std::nullopt;
  return 1.0 - (n - 1.0) * observed / expected;
}

std::vector<std::vector<double>> pivot_units(
    const std::vector<corpus::HumanAnnotation>& annotations,
    const std::string& dimension) {
  // (system, example) -> (annotator, round) -> rating: an annotator's
  // ratings from different rounds are distinct rater slots when pooled
  std::map<std::pair<std::string, std::string>,
           std::map<std::pair<std::string, int>, double>>
      units;
  for (const auto& a : annotations)
    units[{a.system_id, a.example_id}][{a.annotator_id, a.round}] =
        static_cast<double>(a.dimension(dimension));
  std::vector<std::vector<double>> result;
  for (const auto& [key, ratings] : units) {
    std::vector<double> unit;
    for (const auto& [annotator, rating] : ratings) unit.push_back(rating);
    result.push_back(std::move(unit));
  }
  return result;
}

SystemScoreVector system_level_scores(const ScoreTable& table,
                                      const std::string& metric) {
  SystemScoreVector result;
  for (const auto& [group, value] : table.aggregates())
    if (group.second == metric) result.push_back({group.first, value});
  return result;  // map iteration is already sorted by system id
}

SystemScoreVector system_level_scores(
    const std::vector<corpus::HumanAnnotation>& annotations,
    const std::string& dimension) {
  // (system, example) -> ratings, then mean over annotators, then examples
  std::map<std::string, std::map<std::string, std::vector<double>>> grouped;
  for (const auto& a : annotations)
    grouped[a.system_id][a.example_id].push_back(
        static_cast<double>(a.dimension(dimension)));
  SystemScoreVector result;
  for (const auto& [system, examples] : grouped) {
    double total = 0.0;
    for (const auto& [example, ratings] : examples) {
      double sum = 0.0;
      for (double r : ratings) sum += r;
      total += sum / static_cast<double>(ratings.size());
    }
    result.push_back({system, total / static_cast<double>(examples.size())});
  }
  return result;
}

namespace {

CorrelationCell correlate(const std::vector<double>& x,
                          const std::vector<double>& y,
                          Coefficient coefficient) {
  CorrelationCell cell;
  cell.n = x.size();
  if (x.size() < 2) return cell;  // undefined
  cell.value = coefficient == Coefficient::kKendallTauB ? kendall_tau_b(x, y)
                                                        : pearson_r(x, y);
  return cell;
}

// summary level: (system, example) -> clean metric value
std::map<std::pair<std::string, std::string>, double> metric_column(
    const ScoreTable& table, const std::string& metric) {
  std::map<std::pair<std::string, std::string>, double> column;
  for (const auto& [key, cell] : table.cells())
    if (std::get<2>(key) == metric && cell.flag != "error")
      column[{std::get<0>(key), std::get<1>(key)}] = cell.value;
  return column;
}

std::map<std::pair<std::string, std::string>, double> human_column(
    const std::vector<corpus::HumanAnnotation>& annotations,
    const std::string& dimension) {
  std::map<std::pair<std::string, std::string>, std::vector<double>> ratings;
  for (const auto& a : annotations)
    ratings[{a.system_id, a.example_id}].push_back(
        static_cast<double>(a.dimension(dimension)));
  std::map<std::pair<std::string, std::string>, double> column;
  for (const auto& [key, values] : ratings) {
    double sum = 0.0;
    for (double v : values) sum += v;
    column[key] = sum / static_cast<double>(values.size());
  }
  return column;
}

template <typename Key>
CorrelationCell correlate_columns(const std::map<Key, double>& a,
                                  const std::map<Key, double>& b,
                                  Coefficient coefficient) {
  std::vector<double> x, y;
  for (const auto& [key, value] : a) {
    auto it = b.find(key);
    if (it == b.end()) continue;
    x.push_back(value);
    y.push_back(it->second);
  }
  return correlate(x, y, coefficient);
}

}  // namespace

CorrelationCell metric_human_correlation(
    const ScoreTable& table,
    const std::vector<corpus::HumanAnnotation>& annotations,
    const std::string& metric, const std::string& dimension,
    CorrelationLevel level, Coefficient coefficient) {
  if (level == CorrelationLevel::kSystem) {
    std::map<std::string, double> ms, hs;
    for (const auto& [system, value] : system_level_scores(table, metric))
      ms[system] = value;
    for (const auto& [system, value] :
         system_level_scores(annotations, dimension))
      hs[system] = value;
    return correlate_columns(ms, hs, coefficient);
  }
  return correlate_columns(metric_column(table, metric),
                           human_column(annotations, dimension), coefficient);
}

CorrelationReport metric_human_report(
    const ScoreTable& table,
    const std::vector<corpus::HumanAnnotation>& annotations,
    CorrelationLevel level, Coefficient coefficient) {
  CorrelationReport report;
  report.coefficient = coefficient == Coefficient::kKendallTauB
                           ? "kendall_tau_b"
                           : "pearson";
  report.level = level == CorrelationLevel::kSystem ? "system" : "summary";
  report.row_labels = table.metrics();
  for (const char* dim : corpus::kDimensionNames)
    report.col_labels.push_back(dim);
  for (const auto& metric : report.row_labels) {
    std::vector<CorrelationCell> row;
    for (const auto& dimension : report.col_labels)
      row.push_back(metric_human_correlation(table, annotations, metric,
                                             dimension, level, coefficient));
    report.cells.push_back(std::move(row));
  }
  return report;
}

CorrelationReport pairwise_metric_matrix(const ScoreTable& table,
                                         Coefficient coefficient,
                                         CorrelationLevel level) {
  CorrelationReport report;
  report.coefficient = coefficient == Coefficient::kKendallTauB
                           ? "kendall_tau_b"
                           : "pearson";
  report.level = level == CorrelationLevel::kSystem ? "system" : "summary";
  report.row_labels = table.metrics();
  report.col_labels = report.row_labels;
  std::size_t k = report.row_labels.size();
  report.cells.assign(k, std::vector<CorrelationCell>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      CorrelationCell cell;
      if (level == CorrelationLevel::kSystem) {
        std::map<std::string, double> a, b;
        for (const auto& [system, value] :
             system_level_scores(table, report.row_labels[i]))
          a[system] = value;
        for (const auto& [system, value] :
             system_level_scores(table, report.col_labels[j]))
          b[system] = value;
        cell = correlate_columns(a, b, coefficient);
      } else {
        cell = correlate_columns(metric_column(table, report.row_labels[i]),
                                 metric_column(table, report.col_labels[j]),
                                 coefficient);
      }
      report.cells[i][j] = cell;
      report.cells[j][i] = cell;  // exact symmetry by construction
    }
  }
  return report;
}

std::string CorrelationReport::to_tsv() const {
  std::string out;
  for (const auto& label : col_labels) {
    out += '\t';
    out += label;
  }
  out += '\n';
  for (std::size_t i = 0; i < row_labels.size(); ++i) {
    out += row_labels[i];
    for (std::size_t j = 0; j < col_labels.size(); ++j) {
      out += '\t';
      const CorrelationCell& cell = cells[i][j];
      out += cell.value ? format_double(*cell.value) : "NA";
    }
    out += '\n';
  }
  return out;
}

std::string CorrelationReport::meta_block() const {
  std::string out;
  out += "coefficient\t" + coefficient + "\n";
  out += "level\t" + level + "\n";
  for (std::size_t i = 0; i < row_labels.size(); ++i)
    for (std::size_t j = 0; j < col_labels.size(); ++j)
      out += "n\t" + row_labels[i] + "\t" + col_labels[j] + "\t" +
             std::to_string(cells[i][j].n) + "\n";
  for (std::size_t i = 0; i < row_labels.size(); ++i)
    for (std::size_t j = 0; j < col_labels.size(); ++j)
      if (!cells[i][j].value)
        out += "undefined\t" + row_labels[i] + "\t" + col_labels[j] + "\n";
  return out;
}

double population_std(const std::vector<double>& values) {
  if (values.empty()) throw InputError("population_std: empty input");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(values.size()));
}

DispersionResult score_dispersion(
    const std::vector<corpus::HumanAnnotation>& group,
    const std::string& dimension) {
  std::map<std::pair<std::string, std::string>, std::vector<double>> units;
  for (const auto& a : group)
    units[{a.system_id, a.example_id}].push_back(
        static_cast<double>(a.dimension(dimension)));
  DispersionResult result;
  for (const auto& [key, ratings] : units) {
    if (ratings.size() < 2) {
      result.excluded.push_back(key);
      continue;
    }
    double sd = population_std(ratings);
    result.per_example.push_back({key.first, key.second, sd});
    int bin = static_cast<int>(sd / 0.25);
    bin = std::clamp(bin, 0, 7);  // 2.0 lands in the last bin
    ++result.histogram[static_cast<std::size_t>(bin)];
  }
  return result;
}

}  // namespace summetrics::analytics
