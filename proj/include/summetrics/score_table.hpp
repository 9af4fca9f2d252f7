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

#ifndef SUMMETRICS_SCORE_TABLE_HPP_
#define SUMMETRICS_SCORE_TABLE_HPP_

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "summetrics/corpus.hpp"

namespace summetrics {

struct ScoreCell {
  double value = 0.0;
  std::string flag;  // empty when clean; e.g. "empty_candidate", "error"
};

// Sparse (system, example, metric) -> cell store with deterministic
// iteration order. Error-flagged cells are excluded from aggregates.
class ScoreTable {
 public:
  using Key = std::tuple<std::string, std::string, std::string>;

  void set(const std::string& system_id, const std::string& example_id,
           const std::string& metric, double value, std::string flag = "");
  bool contains(const std::string& system_id, const std::string& example_id,
                const std::string& metric) const;
  const ScoreCell* find(const std::string& system_id,
                        const std::string& example_id,
                        const std::string& metric) const;

  const std::map<Key, ScoreCell>& cells() const { return cells_; }
  std::vector<std::string> systems() const;
  std::vector<std::string> metrics() const;

  // Corpus-pooled metrics publish one value per (system, metric) here
  // instead of per-example cells.
  void set_aggregate_override(const std::string& system_id,
                              const std::string& metric, double value);

  // Mean over clean cells per (system, metric); overrides win. Systems
  // with no clean cell for a metric are omitted.
  std::map<std::pair<std::string, std::string>, double> aggregates() const;

  void set_fingerprint(const std::string& metric,
                       const std::string& fingerprint);
  const std::map<std::string, std::string>& fingerprints() const {
    return fingerprints_;
  }

  // Existing (system, example, metric) cell -> InputError naming the cell.
  void merge_external(const std::vector<corpus::ExternalScoreRecord>& records);

  // TSV, header "system_id\texample_id\tmetric\tvalue\tflag", sorted by
  // key; flag column holds "-" when clean.
  std::string to_tsv() const;
  static ScoreTable from_tsv(const std::string& text);

  // TSV, header "system_id\tmetric\tvalue", sorted.
  std::string aggregates_to_tsv() const;

 private:
  std::map<Key, ScoreCell> cells_;
  std::map<std::pair<std::string, std::string>, double> overrides_;
  std::map<std::string, std::string> fingerprints_;
};

}  // namespace summetrics

#endif  // SUMMETRICS_SCORE_TABLE_HPP_
