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

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace summetrics::text {

struct TokenSpan {
  std::size_t begin = 0;  // byte offsets into the original text
  std::size_t end = 0;
};

struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<TokenSpan> spans;  // parallel to tokens, non-overlapping, ascending

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

struct TokenizeOptions {
  bool lowercase = true;    // ASCII case fold
  bool strip_punct = true;  // strip leading/trailing punctuation per token
};

// Splits on Unicode whitespace (ASCII controls included). Tokens reduced to
// empty by punctuation stripping are dropped.
TokenSequence tokenize(std::string_view text, TokenizeOptions opts = {});

// Byte ranges of sentences. A sentence ends at terminal punctuation (. ! ?)
// followed by whitespace and an uppercase letter or by end of text; a newline
// always ends the current sentence. No returned range is empty.
std::vector<std::pair<std::size_t, std::size_t>> sentence_spans(
    std::string_view text);

std::vector<TokenSequence> split_sentences(std::string_view text,
                                           TokenizeOptions opts = {});

// Multiset of n-grams. Keys are the n tokens joined with '\x1f' (tokenize
// never emits tokens containing control bytes, so keys are unambiguous).
struct NgramMultiset {
  int order = 1;
  std::map<std::string, int> counts;
  long long total = 0;  // sum of multiplicities
};

inline constexpr char kNgramSep = '\x1f';

NgramMultiset ngrams(const std::vector<std::string>& tokens, int n);
NgramMultiset ngrams(const TokenSequence& seq, int n);

// n-grams over the character stream with whitespace removed.
NgramMultiset char_ngrams(std::string_view raw_text, int n);

std::size_t lcs_length(const std::vector<std::string>& a,
                       const std::vector<std::string>& b);
std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b);

// Classic rule-based suffix stripping, steps 1a through 5b. Expects an
// ASCII-lowercased token; tokens with non-alphabetic characters are returned
// unchanged.
std::string porter_stem(std::string_view token);

}  // namespace summetrics::text
