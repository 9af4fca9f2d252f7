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

#ifndef SUMMETRICS_EXTRACTIVE_HPP_
#define SUMMETRICS_EXTRACTIVE_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace summetrics::stats {

struct Fragment {
  std::size_t article_start = 0;
  std::size_t summary_start = 0;
  std::size_t length = 0;
};

struct FragmentSet {
  std::vector<Fragment> fragments;  // non-overlapping in summary positions
  std::size_t summary_length = 0;
};

// Greedy left-to-right scan: at each summary position take the longest
// contiguous match found anywhere in the article (ties to the earliest
// article position), consume it, and resume after it.
FragmentSet extractive_fragments(const std::vector<std::string>& article,
                                 const std::vector<std::string>& summary);

// Token-level conveniences over default tokenization.
FragmentSet extractive_fragments_text(const std::string& article,
                                      const std::string& summary);

double coverage(const FragmentSet& frags);    // sum(len) / |summary|
double density(const FragmentSet& frags);     // sum(len^2) / |summary|
double compression(const std::vector<std::string>& article,
                   const std::vector<std::string>& summary);
// |distinct summary n-grams absent from article| / |distinct summary n-grams|
double novelty(const std::vector<std::string>& article,
               const std::vector<std::string>& summary, int n);
// occurrences beyond first / total occurrences
double redundancy(const std::vector<std::string>& summary, int n);
std::size_t summary_length(const std::string& summary);

}  // namespace summetrics::stats

#endif  // SUMMETRICS_EXTRACTIVE_HPP_
