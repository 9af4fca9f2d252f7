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
#include <set>
#include <string>
#include <vector>

#include "summetrics/common.hpp"
#include "summetrics/overlap.hpp"
#include "summetrics/text.hpp"

namespace summetrics::metrics {
namespace {

using text::NgramMultiset;

std::vector<std::string> tokens_of(const std::string& s) {
  return text::tokenize(s).tokens;
}

// gram -> tf * idf, zero-weight grams dropped
std::map<std::string, double> weighted_vector(
    const std::vector<std::string>& tokens, int n,
    const std::map<std::string, int>& doc_freq, double corpus_size) {
  NgramMultiset grams = text::ngrams(tokens, n);
  std::map<std::string, double> vec;
  for (const auto& [gram, count] : grams.counts) {
    auto it = doc_freq.find(gram);
    double df = it == doc_freq.end() ? 0.0 : static_cast<double>(it->second);
    double idf = std::log(corpus_size / std::max(1.0, df));
    double w = static_cast<double>(count) * idf;
    if (w != 0.0) vec[gram] = w;
  }
  return vec;
}

double norm_squared(const std::map<std::string, double>& vec) {
  double s = 0.0;
  for (const auto& [gram, w] : vec) s += w * w;
  return s;
}

// sum over grams of min(c_g, r_g) * r_g over sqrt(|c|^2 |r|^2); the
// min-against-reference clipping keeps the self-similarity exactly 1
double clipped_cosine(const std::map<std::string, double>& cand,
                      const std::map<std::string, double>& ref) {
  double n2c = norm_squared(cand);
  double n2r = norm_squared(ref);
  if (n2c == 0.0 || n2r == 0.0) return 0.0;
  double num = 0.0;
  for (const auto& [gram, rw] : ref) {
    auto it = cand.find(gram);
    if (it == cand.end()) continue;
    num += std::min(it->second, rw) * rw;
  }
  return num / std::sqrt(n2c * n2r);
}

}  // namespace

CiderIdf CiderIdf::build(
    const std::vector<std::vector<std::string>>& references_by_example,
    int max_n) {
  if (max_n < 1) throw ParameterError("cider: max_n must be >= 1");
  CiderIdf idf;
  idf.max_n_ = max_n;
  idf.corpus_size_ = references_by_example.size();
  idf.doc_freq_.resize(static_cast<std::size_t>(max_n));
  for (const auto& refs : references_by_example) {
    for (int n = 1; n <= max_n; ++n) {
      std::set<std::string> in_example;
      for (const auto& r : refs) {
        NgramMultiset grams = text::ngrams(tokens_of(r), n);
        for (const auto& [gram, count] : grams.counts)
          in_example.insert(gram);
      }
      for (const auto& gram : in_example)
        ++idf.doc_freq_[static_cast<std::size_t>(n - 1)][gram];
    }
  }
  return idf;
}

double CiderIdf::score(const std::string& candidate,
                       const std::vector<std::string>& references) const {
  if (references.empty()) throw InputError("cider: no references");
  if (corpus_size_ == 0) throw InputError("cider: empty idf corpus");
  std::vector<std::string> cand = tokens_of(candidate);
  double corpus_size = static_cast<double>(corpus_size_);
  double order_sum = 0.0;
  for (int n = 1; n <= max_n_; ++n) {
    const auto& df = doc_freq_[static_cast<std::size_t>(n - 1)];
    std::map<std::string, double> cvec =
        weighted_vector(cand, n, df, corpus_size);
    std::vector<double> sims;
    for (const auto& r : references)
      sims.push_back(
          clipped_cosine(cvec, weighted_vector(tokens_of(r), n, df,
                                               corpus_size)));
    std::sort(sims.begin(), sims.end());
    double sum = 0.0;
    for (double s : sims) sum += s;
    order_sum += sum / static_cast<double>(sims.size());
  }
  return 10.0 * order_sum / static_cast<double>(max_n_);
}

CiderResult cider(const std::vector<std::string>& candidates,
                  const std::vector<std::vector<std::string>>& references,
                  int max_n) {
  if (candidates.size() != references.size())
    throw InputError("cider: candidate/reference count mismatch");
  if (candidates.empty()) throw InputError("cider: empty corpus");
  CiderIdf idf = CiderIdf::build(references, max_n);
  CiderResult result;
  result.degenerate_corpus = idf.degenerate();
  double sum = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double s = idf.score(candidates[i], references[i]);
    result.per_example.push_back(s);
    sum += s;
  }
  result.corpus_mean = sum / static_cast<double>(candidates.size());
  return result;
}

}  // namespace summetrics::metrics
