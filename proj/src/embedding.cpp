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
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "summetrics/common.hpp"
#include "summetrics/embedding.hpp"
#include "summetrics/text.hpp"

namespace summetrics::embedding {

EmbeddingTable::EmbeddingTable(int dimension) : dimension_(dimension) {
  if (dimension < 1)
    throw ParameterError("embedding dimension must be >= 1");
  default_.assign(static_cast<std::size_t>(dimension), 0.0);
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open embeddings " + path);
  EmbeddingTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string token;
    if (!(ss >> token)) continue;
    std::vector<double> vec;
    double v;
    while (ss >> v) vec.push_back(v);
    if (lineno == 1 && vec.size() == 1 && table.vectors_.empty()) {
      // "count dimension" header: both fields numeric
      char* end = nullptr;
      std::strtod(token.c_str(), &end);
      if (end != nullptr && *end == '\0') continue;
    }
    if (vec.empty())
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": no vector components");
    if (table.dimension_ == 0) {
      table.dimension_ = static_cast<int>(vec.size());
      table.default_.assign(vec.size(), 0.0);
    } else if (static_cast<int>(vec.size()) != table.dimension_) {
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": expected dimension " +
                       std::to_string(table.dimension_) + ", got " +
                       std::to_string(vec.size()));
    }
    table.vectors_[token] = std::move(vec);
  }
  if (table.vectors_.empty()) throw InputError(path + ": empty embedding file");
  return table;
}

void EmbeddingTable::insert(const std::string& token,
                            std::vector<double> vec) {
  if (dimension_ == 0) {
    dimension_ = static_cast<int>(vec.size());
    default_.assign(vec.size(), 0.0);
  }
  if (static_cast<int>(vec.size()) != dimension_)
    throw ParameterError("embedding vector for '" + token +
                         "' has wrong dimension");
  vectors_[token] = std::move(vec);
}

void EmbeddingTable::set_default_vector(std::vector<double> vec) {
  if (dimension_ != 0 && static_cast<int>(vec.size()) != dimension_)
    throw ParameterError("default vector has wrong dimension");
  if (dimension_ == 0) dimension_ = static_cast<int>(vec.size());
  default_ = std::move(vec);
}

const std::vector<double>& EmbeddingTable::lookup(
    const std::string& token) const {
  auto it = vectors_.find(token);
  return it == vectors_.end() ? default_ : it->second;
}

double cosine(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size())
    throw ParameterError("cosine: dimension mismatch");
  double dot = 0.0, n2u = 0.0, n2v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    n2u += u[i] * u[i];
    n2v += v[i] * v[i];
  }
  if (n2u == 0.0 || n2v == 0.0) return 0.0;
  return dot / std::sqrt(n2u * n2v);
}

namespace {

struct GramOccurrence {
  std::string key;
  std::size_t start;  // token offset in the sequence
};

double soft_similarity(const std::vector<std::string>& cand_tokens,
                       std::size_t cand_start,
                       const std::vector<std::string>& ref_tokens,
                       std::size_t ref_start, int n,
                       const EmbeddingTable& table) {
  double sim = 1.0;
  for (int k = 0; k < n; ++k) {
    double c = cosine(table.lookup(cand_tokens[cand_start + k]),
                      table.lookup(ref_tokens[ref_start + k]));
    sim *= std::max(0.0, c);
    if (sim == 0.0) return 0.0;
  }
  return sim;
}

}  // namespace

metrics::PRF rouge_we_n(const std::string& candidate,
                        const std::vector<std::string>& references, int n,
                        const EmbeddingTable& table, double sim_threshold,
                        metrics::MultiRefPolicy policy) {
  if (n < 1) throw ParameterError("rouge_we_n: n must be >= 1");
  if (references.empty()) throw InputError("rouge_we_n: no references");
  if (table.dimension() == 0)
    throw ParameterError("rouge_we_n: embedding table not loaded");
  std::vector<std::string> cand_tokens = text::tokenize(candidate).tokens;
  std::vector<GramOccurrence> cand_grams;
  if (static_cast<int>(cand_tokens.size()) >= n)
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <=
                            cand_tokens.size();
         ++i) {
      std::string key = cand_tokens[i];
      for (int k = 1; k < n; ++k) {
        key += text::kNgramSep;
        key += cand_tokens[i + static_cast<std::size_t>(k)];
      }
      cand_grams.push_back({std::move(key), i});
    }

  std::vector<metrics::PRF> per_ref;
  for (const auto& reference : references) {
    std::vector<std::string> ref_tokens = text::tokenize(reference).tokens;
    // key -> (remaining count, a start offset for vector lookups)
    std::map<std::string, std::pair<long long, std::size_t>> ref_grams;
    long long ref_total = 0;
    if (static_cast<int>(ref_tokens.size()) >= n)
      for (std::size_t j = 0; j + static_cast<std::size_t>(n) <=
                              ref_tokens.size();
           ++j) {
        std::string key = ref_tokens[j];
        for (int k = 1; k < n; ++k) {
          key += text::kNgramSep;
          key += ref_tokens[j + static_cast<std::size_t>(k)];
        }
        auto [it, inserted] = ref_grams.emplace(
            std::move(key), std::pair<long long, std::size_t>{0, j});
        ++it->second.first;
        ++ref_total;
      }

    std::vector<bool> cand_matched(cand_grams.size(), false);
    long long matches = 0;
    // exact string matches bypass the threshold entirely
    for (std::size_t i = 0; i < cand_grams.size(); ++i) {
      auto it = ref_grams.find(cand_grams[i].key);
      if (it != ref_grams.end() && it->second.first > 0) {
        --it->second.first;
        cand_matched[i] = true;
        ++matches;
      }
    }
    for (std::size_t i = 0; i < cand_grams.size(); ++i) {
      if (cand_matched[i]) continue;
      double best_sim = 0.0;
      const std::string* best_key = nullptr;
      for (const auto& [key, entry] : ref_grams) {
        if (entry.first <= 0) continue;
        double sim = soft_similarity(cand_tokens, cand_grams[i].start,
                                     ref_tokens, entry.second, n, table);
        if (sim >= sim_threshold && sim > best_sim) {
          best_sim = sim;
          best_key = &key;
        }
      }
      if (best_key != nullptr) {
        --ref_grams[*best_key].first;
        ++matches;
      }
    }
    metrics::PRF prf;
    long long cand_total = static_cast<long long>(cand_grams.size());
    prf.precision =
        cand_total > 0 ? static_cast<double>(matches) / cand_total : 0.0;
    prf.recall =
        ref_total > 0 ? static_cast<double>(matches) / ref_total : 0.0;
    prf.f_score = metrics::harmonic_f(prf.precision, prf.recall);
    per_ref.push_back(prf);
  }
  return metrics::aggregate_multi_ref_prf(per_ref, policy);
}

namespace {

void append_word_points(const std::vector<std::string>& tokens,
                        const EmbeddingTable& table,
                        std::vector<WeightedPoint>* points) {
  std::map<std::string, long long> counts;
  for (const auto& t : tokens) ++counts[t];
  for (const auto& [token, count] : counts)
    points->push_back(
        {table.lookup(token), static_cast<double>(count)});
}

void append_sentence_points(const std::string& text_in,
                            const EmbeddingTable& table,
                            std::vector<WeightedPoint>* points) {
  for (const auto& sent : text::split_sentences(text_in)) {
    std::size_t len = sent.tokens.size();
    if (len == 0) continue;
    std::vector<double> mean(static_cast<std::size_t>(table.dimension()),
                             0.0);
    for (const auto& t : sent.tokens) {
      const std::vector<double>& v = table.lookup(t);
      for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += v[d];
    }
    for (double& x : mean) x /= static_cast<double>(len);
    points->push_back({std::move(mean), static_cast<double>(len)});
  }
}

WeightedPointSet build_points(const std::string& text_in,
                              const EmbeddingTable& table,
                              SmsVariant variant, bool* any_in_vocab) {
  std::vector<std::string> tokens = text::tokenize(text_in).tokens;
  if (tokens.empty())
    throw InputError("sms_family: text has no tokens");
  for (const auto& t : tokens)
    if (table.contains(t)) *any_in_vocab = true;
  WeightedPointSet set;
  if (variant == SmsVariant::kWms || variant == SmsVariant::kSwms)
    append_word_points(tokens, table, &set.points);
  if (variant == SmsVariant::kSms || variant == SmsVariant::kSwms)
    append_sentence_points(text_in, table, &set.points);
  return set;
}

}  // namespace

SmsResult sms_family(const std::string& candidate, const std::string& other,
                     const EmbeddingTable& table, SmsVariant variant,
                     GroundMetric metric) {
  if (table.dimension() == 0)
    throw ParameterError("sms_family: embedding table not loaded");
  bool any_in_vocab = false;
  WeightedPointSet a = build_points(candidate, table, variant, &any_in_vocab);
  WeightedPointSet b = build_points(other, table, variant, &any_in_vocab);
  SmsResult result;
  result.all_oov = !any_in_vocab;
  result.similarity = std::exp(-movers_distance(a, b, metric));
  return result;
}

}  // namespace summetrics::embedding
