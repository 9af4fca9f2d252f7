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

#include "summetrics/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>

#include "summetrics/common.hpp"

namespace summetrics {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace summetrics

namespace summetrics::text {
namespace {

// Decodes the UTF-8 codepoint starting at position i; advances len to the
// number of bytes consumed. Invalid bytes are passed through as themselves.
std::uint32_t decode_utf8(std::string_view s, std::size_t i, std::size_t& len) {
  unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    len = 1;
    return b0;
  }
  auto cont = [&](std::size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xc0) == 0x80;
  };
  if ((b0 & 0xe0) == 0xc0 && cont(1)) {
    len = 2;
    return (std::uint32_t(b0 & 0x1f) << 6) |
           (static_cast<unsigned char>(s[i + 1]) & 0x3f);
  }
  if ((b0 & 0xf0) == 0xe0 && cont(1) && cont(2)) {
    len = 3;
    return (std::uint32_t(b0 & 0x0f) << 12) |
           (std::uint32_t(static_cast<unsigned char>(s[i + 1]) & 0x3f) << 6) |
           (static_cast<unsigned char>(s[i + 2]) & 0x3f);
  }
  if ((b0 & 0xf8) == 0xf0 && cont(1) && cont(2) && cont(3)) {
    len = 4;
    return (std::uint32_t(b0 & 0x07) << 18) |
           (std::uint32_t(static_cast<unsigned char>(s[i + 1]) & 0x3f) << 12) |
           (std::uint32_t(static_cast<unsigned char>(s[i + 2]) & 0x3f) << 6) |
           (static_cast<unsigned char>(s[i + 3]) & 0x3f);
  }
  len = 1;
  return b0;
}

bool is_space_cp(std::uint32_t cp) {
  if (cp <= 0x20 || cp == 0x7f) return true;  // controls count as separators
  switch (cp) {
    case 0x85:
    case 0xa0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202f:
    case 0x205f:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200a;
  }
}

bool is_punct_cp(std::uint32_t cp) {
  if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
  switch (cp) {
    case 0xa1:
    case 0xab:
    case 0xb7:
    case 0xbb:
    case 0xbf:
    case 0x3001:
    case 0x3002:
    case 0x300c:
    case 0x300d:
      return true;
    default:
      // general punctuation block (dashes, quotes, ellipsis, bullets)
      return cp >= 0x2010 && cp <= 0x205e;
  }
}

// Strips leading/trailing punctuation codepoints; returns the kept byte range.
std::pair<std::size_t, std::size_t> strip_punct_range(std::string_view tok) {
  std::size_t begin = 0, end = tok.size();
  while (begin < end) {
    std::size_t len = 0;
    std::uint32_t cp = decode_utf8(tok, begin, len);
    if (!is_punct_cp(cp)) break;
    begin += len;
  }
  // scan codepoint starts from the front to find the last non-punct end
  std::size_t i = begin, keep_end = begin;
  while (i < end) {
    std::size_t len = 0;
    std::uint32_t cp = decode_utf8(tok, i, len);
    i += len;
    if (!is_punct_cp(cp)) keep_end = i;
  }
  return {begin, keep_end};
}

}  // namespace

TokenSequence tokenize(std::string_view s, TokenizeOptions opts) {
  TokenSequence out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t len = 0;
    if (is_space_cp(decode_utf8(s, i, len))) {
      i += len;
      continue;
    }
    std::size_t start = i;
    while (i < s.size()) {
      std::size_t l2 = 0;
      if (is_space_cp(decode_utf8(s, i, l2))) break;
      i += l2;
    }
    std::string_view raw = s.substr(start, i - start);
    std::size_t b = 0, e = raw.size();
    if (opts.strip_punct) {
      auto [pb, pe] = strip_punct_range(raw);
      b = pb;
      e = pe;
    }
    if (b >= e) continue;
    std::string tok(raw.substr(b, e - b));
    if (opts.lowercase) {
      for (char& c : tok)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    out.tokens.push_back(std::move(tok));
    out.spans.push_back({start + b, start + e});
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> sentence_spans(
    std::string_view s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  auto emit = [&](std::size_t b, std::size_t e) {
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    if (e > b) out.emplace_back(b, e);
  };
  std::size_t n = s.size();
  std::size_t start = std::string_view::npos;
  std::size_t i = 0;
  while (i < n) {
    char c = s[i];
    if (start == std::string_view::npos) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      start = i;
    }
    if (c == '\n') {
      emit(start, i);
      start = std::string_view::npos;
      ++i;
      continue;
    }
    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i + 1;
      while (j < n && (s[j] == '.' || s[j] == '!' || s[j] == '?')) ++j;
      if (j >= n) {
        emit(start, j);
        start = std::string_view::npos;
        i = j;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(s[j]))) {
        std::size_t k = j;
        while (k < n && std::isspace(static_cast<unsigned char>(s[k])) &&
               s[k] != '\n')
          ++k;
        bool boundary = k >= n || s[k] == '\n' ||
                        std::isupper(static_cast<unsigned char>(s[k]));
        if (boundary) {
          emit(start, j);
          start = std::string_view::npos;
          i = j;
          continue;
        }
      }
      i = j;
      continue;
    }
    ++i;
  }
  if (start != std::string_view::npos) emit(start, n);
  return out;
}

std::vector<TokenSequence> split_sentences(std::string_view s,
                                           TokenizeOptions opts) {
  std::vector<TokenSequence> out;
  for (auto [b, e] : sentence_spans(s)) {
    TokenSequence ts = tokenize(s.substr(b, e - b), opts);
    for (auto& sp : ts.spans) {
      sp.begin += b;
      sp.end += b;
    }
    if (!ts.empty()) out.push_back(std::move(ts));
  }
  return out;
}

NgramMultiset ngrams(const std::vector<std::string>& tokens, int n) {
  if (n < 1) throw ParameterError("ngram order must be >= 1");
  NgramMultiset out;
  out.order = n;
  if (tokens.size() < static_cast<std::size_t>(n)) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < static_cast<std::size_t>(n); ++k) {
      key += kNgramSep;
      key += tokens[i + k];
    }
    ++out.counts[key];
    ++out.total;
  }
  return out;
}

NgramMultiset ngrams(const TokenSequence& seq, int n) {
  return ngrams(seq.tokens, n);
}

NgramMultiset char_ngrams(std::string_view raw_text, int n) {
  if (n < 1) throw ParameterError("ngram order must be >= 1");
  std::string stream;
  stream.reserve(raw_text.size());
  std::size_t i = 0;
  while (i < raw_text.size()) {
    std::size_t len = 0;
    std::uint32_t cp = decode_utf8(raw_text, i, len);
    if (!is_space_cp(cp)) stream.append(raw_text.substr(i, len));
    i += len;
  }
  // n-grams are over codepoints, not bytes
  std::vector<std::size_t> starts;
  i = 0;
  while (i < stream.size()) {
    starts.push_back(i);
    std::size_t len = 0;
    decode_utf8(stream, i, len);
    i += len;
  }
  starts.push_back(stream.size());
  NgramMultiset out;
  out.order = n;
  if (starts.size() < static_cast<std::size_t>(n) + 1) return out;
  for (std::size_t k = 0; k + n < starts.size(); ++k) {
    std::string key = stream.substr(starts[k], starts[k + n] - starts[k]);
    ++out.counts[key];
    ++out.total;
  }
  return out;
}

std::size_t lcs_length(const std::vector<std::string>& a,
                       const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
  return lcs_length(a.tokens, b.tokens);
}

}  // namespace summetrics::text
