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

#include <set>
#include <string>
#include <vector>

#include "summetrics/common.hpp"
#include "summetrics/extractive.hpp"
#include "summetrics/text.hpp"

namespace summetrics::stats {

FragmentSet extractive_fragments(const std::vector<std::string>& article,
                                 const std::vector<std::string>& summary) {
  FragmentSet set;
  set.summary_length = summary.size();
  std::size_t i = 0;
  while (i < summary.size()) {
    std::size_t best_len = 0, best_pos = 0;
    for (std::size_t j = 0; j < article.size(); ++j) {
      if (article[j] != summary[i]) continue;
      std::size_t len = 0;
      while (i + len < summary.size() && j + len < article.size() &&
             article[j + len] == summary[i + len])
        ++len;
      if (len > best_len) {  // ties keep the earliest article position
        best_len = len;
        best_pos = j;
      }
    }
    if (best_len == 0) {
      ++i;
      continue;
    }
    set.fragments.push_back({best_pos, i, best_len});
    i += best_len;
  }
  return set;
}

FragmentSet extractive_fragments_text(const std::string& article,
                                      const std::string& summary) {
  return extractive_fragments(text::tokenize(article).tokens,
                              text::tokenize(summary).tokens);
}

double coverage(const FragmentSet& frags) {
  if (frags.summary_length == 0)
    throw InputError("coverage: empty summary");
  std::size_t covered = 0;
  for (const auto& f : frags.fragments) covered += f.length;
  return static_cast<double>(covered) /
         static_cast<double>(frags.summary_length);
}

double density(const FragmentSet& frags) {
  if (frags.summary_length == 0)
    throw InputError("density: empty summary");
  double squares = 0.0;
  for (const auto& f : frags.fragments)
    squares += static_cast<double>(f.length) * static_cast<double>(f.length);
  return squares / static_cast<double>(frags.summary_length);
}

double compression(const std::vector<std::string>& article,
                   const std::vector<std::string>& summary) {
  if (summary.empty()) throw InputError("compression: empty summary");
  return static_cast<double>(article.size()) /
         static_cast<double>(summary.size());
}

double novelty(const std::vector<std::string>& article,
               const std::vector<std::string>& summary, int n) {
  if (n < 1) throw ParameterError("novelty: n must be >= 1");
  text::NgramMultiset sgrams = text::ngrams(summary, n);
  if (sgrams.counts.empty())
    throw InputError("novelty: summary shorter than n");
  text::NgramMultiset agrams = text::ngrams(article, n);
  std::size_t absent = 0;
  for (const auto& [gram, count] : sgrams.counts)
    if (agrams.counts.find(gram) == agrams.counts.end()) ++absent;
  return static_cast<double>(absent) /
         static_cast<double>(sgrams.counts.size());
}

double redundancy(const std::vector<std::string>& summary, int n) {
  if (n < 1) throw ParameterError("redundancy: n must be >= 1");
  text::NgramMultiset grams = text::ngrams(summary, n);
  if (grams.total == 0)
    throw InputError("redundancy: summary shorter than n");
  return static_cast<double>(grams.total -
                             static_cast<long long>(grams.counts.size())) /
         static_cast<double>(grams.total);
}

std::size_t summary_length(const std::string& summary) {
  return text::tokenize(summary).tokens.size();
}

}  // namespace summetrics::stats
