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

#ifndef SUMMETRICS_EMBEDDING_HPP_
#define SUMMETRICS_EMBEDDING_HPP_

#include <map>
#include <string>
#include <vector>

#include "summetrics/overlap.hpp"

namespace summetrics::embedding {

// Word-vector store. Lookups never fail: unknown tokens resolve to the
// default vector (all zeros unless overridden).
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int dimension);

  // Text format: one "token v1 v2 ... vd" line per entry; an optional
  // leading "count dimension" header line is detected and skipped.
  static EmbeddingTable load(const std::string& path);

  int dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  void insert(const std::string& token, std::vector<double> vec);
  void set_default_vector(std::vector<double> vec);
  const std::vector<double>& lookup(const std::string& token) const;
  bool contains(const std::string& token) const {
    return vectors_.count(token) > 0;
  }

 private:
  int dimension_ = 0;
  std::map<std::string, std::vector<double>> vectors_;
  std::vector<double> default_;
};

// u.v / (|u||v|); 0 when either norm is 0. cosine(x, x) is exactly 1 for
// nonzero x: the denominator is the single square root of the product of
// the squared norms.
double cosine(const std::vector<double>& u, const std::vector<double>& v);

// Soft n-gram overlap: string-equal grams always match (any threshold);
// remaining candidate grams match the best available reference gram whose
// per-position cosine product reaches sim_threshold, ties to the
// lexicographically smallest reference gram. Negative cosines clamp to 0.
metrics::PRF rouge_we_n(
    const std::string& candidate, const std::vector<std::string>& references,
    int n, const EmbeddingTable& table, double sim_threshold = 0.8,
    metrics::MultiRefPolicy policy = metrics::MultiRefPolicy::kMax);

struct WeightedPoint {
  std::vector<double> vector;
  double weight = 0.0;
};

struct WeightedPointSet {
  std::vector<WeightedPoint> points;
};

enum class GroundMetric { kEuclidean, kCosineDistance };

// Exact optimal-transport cost between the two (normalized) point sets,
// solved by the transportation simplex. Supports up to 500x500 points.
double movers_distance(const WeightedPointSet& a, const WeightedPointSet& b,
                       GroundMetric metric = GroundMetric::kEuclidean);

enum class SmsVariant { kWms, kSms, kSwms };

struct SmsResult {
  double similarity = 0.0;  // exp(-distance), in (0, 1]
  bool all_oov = false;     // every token of both texts was out of vocabulary
};

// kWms: one point per distinct word, weight by count. kSms: one point per
// sentence (mean of its word vectors), weight by token count. kSwms: the
// union, normalized jointly.
SmsResult sms_family(const std::string& candidate, const std::string& other,
                     const EmbeddingTable& table, SmsVariant variant,
                     GroundMetric metric = GroundMetric::kEuclidean);

}  // namespace summetrics::embedding

#endif  // SUMMETRICS_EMBEDDING_HPP_
