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

#ifndef SUMMETRICS_ENGINE_HPP_
#define SUMMETRICS_ENGINE_HPP_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "summetrics/corpus.hpp"
#include "summetrics/embedding.hpp"
#include "summetrics/overlap.hpp"
#include "summetrics/score_table.hpp"

namespace summetrics::engine {

struct MetricConfig {
  std::string metric_name;
  std::map<std::string, std::string> parameters;
};

// Stable across parameter-map key order; any parameter change moves it.
std::string config_fingerprint(const MetricConfig& config);

struct MetricResult {
  double value = 0.0;
  std::string flag;  // empty = clean; "error" cells leave the aggregates
};

// Shared read-only state metrics may need beyond the instance itself.
struct MetricContext {
  const embedding::EmbeddingTable* embeddings = nullptr;
  const metrics::SynonymTable* synonyms = nullptr;
  const metrics::CiderIdf* cider_idf = nullptr;  // batch idf pre-pass
};

struct MetricDefinition {
  MetricConfig config;
  bool needs_references = false;
  bool needs_source = false;
  bool needs_embeddings = false;
  // scored once per system over its whole segment list; per-example rows
  // stay empty and the corpus score lands in the aggregate row
  bool corpus_pooled = false;
  // wants a read-only whole-batch pre-pass (idf)
  bool corpus_prepass = false;
  std::function<MetricResult(const corpus::EvaluationInstance&,
                             const MetricContext&)>
      score;
  // used instead of score when corpus_pooled is set and a batch is present
  std::function<double(const std::vector<std::string>&,
                       const std::vector<std::vector<std::string>>&)>
      corpus_score;
};

class MetricRegistry {
 public:
  // every built-in metric under its default configuration; multi_ref picks
  // the reference reduction used by the rouge family
  static MetricRegistry standard(
      metrics::MultiRefPolicy multi_ref = metrics::MultiRefPolicy::kMax);

  void add(const std::string& name, MetricDefinition definition);
  bool contains(const std::string& name) const;
  const MetricDefinition& at(const std::string& name) const;
  std::vector<std::string> names() const;

  static std::vector<std::string> default_metrics(bool with_embeddings);

 private:
  std::map<std::string, MetricDefinition> definitions_;
};

// One finite value (plus flag) per requested metric. Unknown metric names
// raise ParameterError before any scoring; a metric whose requirement is
// unsatisfiable or whose computation fails yields an "error" entry while
// the rest are still produced. Empty candidates yield all-zero entries
// flagged "empty_candidate".
std::map<std::string, MetricResult> evaluate_example(
    const corpus::EvaluationInstance& instance,
    const std::vector<std::string>& metric_names,
    const MetricRegistry& registry, const MetricContext& context = {});

// Parallel over instances into index-addressed slots; output is invariant
// over the worker count.
ScoreTable evaluate_batch(
    const std::vector<corpus::EvaluationInstance>& instances,
    const std::vector<std::string>& metric_names,
    const MetricRegistry& registry, int parallelism = 1,
    const MetricContext& context = {});

}  // namespace summetrics::engine

#endif  // SUMMETRICS_ENGINE_HPP_
