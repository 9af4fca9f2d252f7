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

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "summetrics/common.hpp"
#include "summetrics/score_table.hpp"

namespace summetrics {
namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

}  // namespace

void ScoreTable::set(const std::string& system_id,
                     const std::string& example_id, const std::string& metric,
                     double value, std::string flag) {
  if (!std::isfinite(value))
    throw ParameterError("non-finite score for (" + system_id + ", " +
                         example_id + ", " + metric + ")");
  cells_[Key{system_id, example_id, metric}] =
      ScoreCell{value, std::move(flag)};
}

bool ScoreTable::contains(const std::string& system_id,
                          const std::string& example_id,
                          const std::string& metric) const {
  return cells_.count(Key{system_id, example_id, metric}) > 0;
}

const ScoreCell* ScoreTable::find(const std::string& system_id,
                                  const std::string& example_id,
                                  const std::string& metric) const {
  auto it = cells_.find(Key{system_id, example_id, metric});
  return it == cells_.end() ? nullptr : &it->second;
}

std::vector<std::string> ScoreTable::systems() const {
  std::set<std::string> seen;
  for (const auto& [key, cell] : cells_) seen.insert(std::get<0>(key));
  for (const auto& [key, value] : overrides_) seen.insert(key.first);
  return {seen.begin(), seen.end()};
}

std::vector<std::string> ScoreTable::metrics() const {
  std::set<std::string> seen;
  for (const auto& [key, cell] : cells_) seen.insert(std::get<2>(key));
  for (const auto& [key, value] : overrides_) seen.insert(key.second);
  return {seen.begin(), seen.end()};
}

void ScoreTable::set_aggregate_override(const std::string& system_id,
                                        const std::string& metric,
                                        double value) {
  if (!std::isfinite(value))
    throw ParameterError("non-finite aggregate for (" + system_id + ", " +
                         metric + ")");
  overrides_[{system_id, metric}] = value;
}

std::map<std::pair<std::string, std::string>, double> ScoreTable::aggregates()
    const {
  std::map<std::pair<std::string, std::string>, double> sums;
  std::map<std::pair<std::string, std::string>, long long> counts;
  for (const auto& [key, cell] : cells_) {
    if (cell.flag == "error") continue;
    std::pair<std::string, std::string> group{std::get<0>(key),
                                              std::get<2>(key)};
    sums[group] += cell.value;
    ++counts[group];
  }
  std::map<std::pair<std::string, std::string>, double> result;
  for (const auto& [group, total] : sums)
    result[group] = total / static_cast<double>(counts[group]);
  for (const auto& [group, value] : overrides_) result[group] = value;
  return result;
}

void ScoreTable::set_fingerprint(const std::string& metric,
                                 const std::string& fingerprint) {
  fingerprints_[metric] = fingerprint;
}

void ScoreTable::merge_external(
    const std::vector<corpus::ExternalScoreRecord>& records) {
  for (const auto& r : records) {
    Key key{r.system_id, r.example_id, r.metric_name};
    if (cells_.count(key) > 0)
      throw InputError("external score collides with existing cell (" +
                       r.system_id + ", " + r.example_id + ", " +
                       r.metric_name + ")");
    if (!std::isfinite(r.value))
      throw InputError("non-finite external score for (" + r.system_id +
                       ", " + r.example_id + ", " + r.metric_name + ")");
    cells_[key] = ScoreCell{r.value, ""};
  }
}

std::string ScoreTable::to_tsv() const {
  std::string out = "system_id\texample_id\tmetric\tvalue\tflag\n";
  for (const auto& [key, cell] : cells_) {
    out += std::get<0>(key);
    out += '\t';
    out += std::get<1>(key);
    out += '\t';
    out += std::get<2>(key);
    out += '\t';
    out += format_double(cell.value);
    out += '\t';
    out += cell.flag.empty() ? "-" : cell.flag;
    out += '\n';
  }
  return out;
}

ScoreTable ScoreTable::from_tsv(const std::string& text) {
  ScoreTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("system_id\t", 0) == 0) continue;
    std::vector<std::string> f = split_tabs(line);
    if (f.size() != 5)
      throw InputError("score line " + std::to_string(lineno) +
                       ": expected 5 tab-separated fields");
    double value = 0.0;
    try {
      value = std::stod(f[3]);
    } catch (const std::exception&) {
      throw InputError("score line " + std::to_string(lineno) +
                       ": bad value '" + f[3] + "'");
    }
    table.set(f[0], f[1], f[2], value, f[4] == "-" ? "" : f[4]);
  }
  return table;
}

std::string ScoreTable::aggregates_to_tsv() const {
  std::string out = "system_id\tmetric\tvalue\n";
  for (const auto& [group, value] : aggregates()) {
    out += group.first;
    out += '\t';
    out += group.second;
    out += '\t';
    out += format_double(value);
    out += '\n';
  }
  return out;
}

}  // namespace summetrics
