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

#include <array>
#include <string>
#include <string_view>

#include "summetrics/text.hpp"

namespace summetrics::text {
namespace {

// 'y' is a consonant at word start or after a vowel, a vowel after a
// consonant.
bool is_consonant(std::string_view w, std::size_t i) {
  char c = w[i];
  if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
  if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
  return true;
}

// m in [C](VC)^m[V] computed over w[0:len).
int measure(std::string_view w, std::size_t len) {
  int m = 0;
  std::size_t i = 0;
  while (i < len && is_consonant(w, i)) ++i;  // leading [C]
  while (i < len) {
    while (i < len && !is_consonant(w, i)) ++i;  // V run
    if (i >= len) break;
    while (i < len && is_consonant(w, i)) ++i;  // C run
    ++m;                                        // one VC pair closed
  }
  return m;
}

bool has_vowel(std::string_view w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

bool ends_double_consonant(std::string_view w, std::size_t len) {
  return len >= 2 && w[len - 1] == w[len - 2] && is_consonant(w, len - 1);
}

// *o: ends cvc where the final c is not w, x or y.
bool ends_cvc(std::string_view w, std::size_t len) {
  if (len < 3) return false;
  if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) ||
      !is_consonant(w, len - 1))
    return false;
  char c = w[len - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Within a step only the longest matching suffix is considered; if its
// condition fails no rule of the step fires. Tables are ordered longest
// first.
constexpr std::array<Rule, 20> kStep2 = {{
    {"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"},
    {"fulness", "ful"}, {"ousness", "ous"}, {"tional", "tion"},
    {"biliti", "ble"},  {"alism", "al"},    {"ation", "ate"},
    {"aliti", "al"},    {"iviti", "ive"},   {"ousli", "ous"},
    {"entli", "ent"},   {"enci", "ence"},   {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},
    {"ator", "ate"},    {"eli", "e"},
}};

constexpr std::array<Rule, 7> kStep3 = {{
    {"icate", "ic"},
    {"ative", ""},
    {"alize", "al"},
    {"iciti", "ic"},
    {"ical", "ic"},
    {"ness", ""},
    {"ful", ""},
}};

constexpr std::array<Rule, 19> kStep4 = {{
    {"ement", ""}, {"ance", ""}, {"ence", ""}, {"able", ""}, {"ible", ""},
    {"ment", ""},  {"ant", ""},  {"ent", ""},  {"ion", ""},  {"ism", ""},
    {"ate", ""},   {"iti", ""},  {"ous", ""},  {"ive", ""},  {"ize", ""},
    {"al", ""},    {"er", ""},   {"ic", ""},   {"ou", ""},
}};

void step_1a(std::string& w) {
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ies")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ss")) {
    // keep
  } else if (ends_with(w, "s")) {
    w.resize(w.size() - 1);
  }
}

void step_1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
    return;
  }
  bool removed = false;
  if (ends_with(w, "ed") && has_vowel(w, w.size() - 2)) {
    w.resize(w.size() - 2);
    removed = true;
  } else if (ends_with(w, "ing") && has_vowel(w, w.size() - 3)) {
    w.resize(w.size() - 3);
    removed = true;
  }
  if (!removed) return;
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w += 'e';
  } else if (ends_double_consonant(w, w.size())) {
    char last = w.back();
    if (last != 'l' && last != 's' && last != 'z') w.resize(w.size() - 1);
  } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
    w += 'e';
  }
}

void step_1c(std::string& w) {
  if (ends_with(w, "y") && has_vowel(w, w.size() - 1)) w.back() = 'i';
}

template <std::size_t N>
void apply_table(std::string& w, const std::array<Rule, N>& rules,
                 int min_measure) {
  for (const Rule& r : rules) {
    if (!ends_with(w, r.suffix)) continue;
    std::size_t stem_len = w.size() - r.suffix.size();
    if (measure(w, stem_len) > min_measure) {
      w.resize(stem_len);
      w += r.replacement;
    }
    return;  // longest match found; condition decided the step
  }
}

void step_4(std::string& w) {
  for (const Rule& r : kStep4) {
    if (!ends_with(w, r.suffix)) continue;
    std::size_t stem_len = w.size() - r.suffix.size();
    bool ok = measure(w, stem_len) > 1;
    if (ok && r.suffix == "ion")
      ok = stem_len > 0 && (w[stem_len - 1] == 's' || w[stem_len - 1] == 't');
    if (ok) w.resize(stem_len);
    return;
  }
}

void step_5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  std::size_t stem_len = w.size() - 1;
  int m = measure(w, stem_len);
  if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) w.resize(stem_len);
}

void step_5b(std::string& w) {
  if (measure(w, w.size()) > 1 && ends_double_consonant(w, w.size()) &&
      w.back() == 'l')
    w.resize(w.size() - 1);
}

}  // namespace

std::string porter_stem(std::string_view token) {
  std::string w(token);
  for (char c : w)
    if (c < 'a' || c > 'z') return w;  // non-alphabetic input unchanged
  if (w.empty()) return w;
  step_1a(w);
  step_1b(w);
  step_1c(w);
  apply_table(w, kStep2, 0);
  apply_table(w, kStep3, 0);
  step_4(w);
  step_5a(w);
  step_5b(w);
  return w;
}

}  // namespace summetrics::text
