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
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "summetrics/common.hpp"
#include "summetrics/overlap.hpp"
#include "summetrics/text.hpp"

namespace summetrics::metrics {
namespace {

using text::NgramMultiset;
using text::TokenSequence;

std::vector<std::string> tokens_of(const std::string& s) {
  return text::tokenize(s).tokens;
}

std::vector<std::string> stemmed(std::vector<std::string> toks) {
  for (auto& t : toks) t = text::porter_stem(t);
  return toks;
}

long long clipped_overlap(const NgramMultiset& cand,
                          const NgramMultiset& ref) {
  long long overlap = 0;
  for (const auto& [gram, count] : cand.counts) {
    auto it = ref.counts.find(gram);
    if (it != ref.counts.end())
      overlap += std::min<long long>(count, it->second);
  }
  return overlap;
}

PRF prf_from_counts(long long overlap, long long cand_total,
                    long long ref_total) {
  PRF out;
  out.precision =
      cand_total > 0 ? static_cast<double>(overlap) / cand_total : 0.0;
  out.recall = ref_total > 0 ? static_cast<double>(overlap) / ref_total : 0.0;
  out.f_score = harmonic_f(out.precision, out.recall);
  return out;
}

// Positions in `a` belonging to one canonical LCS with `b`: walk the DP
// table from the corner, moving left on strict ties.
std::vector<std::size_t> lcs_positions(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) {
  std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      dp[i][j] = a[i - 1] == b[j - 1]
                     ? dp[i - 1][j - 1] + 1
                     : std::max(dp[i - 1][j], dp[i][j - 1]);
  std::vector<std::size_t> positions;
  std::size_t i = n, j = m;
  while (i > 0 && j > 0) {
    if (a[i - 1] == b[j - 1]) {
      positions.push_back(i - 1);
      --i;
      --j;
    } else if (dp[i][j - 1] > dp[i - 1][j]) {
      --j;
    } else {
      --i;
    }
  }
  std::reverse(positions.begin(), positions.end());
  return positions;
}

}  // namespace

double harmonic_f(double precision, double recall) {
  double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

double aggregate_multi_ref(const std::vector<double>& scores,
                           MultiRefPolicy policy) {
  if (scores.empty())
    throw InputError("aggregate_multi_ref: empty score list");
  if (policy == MultiRefPolicy::kMax)
    return *std::max_element(scores.begin(), scores.end());
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  return sum / static_cast<double>(sorted.size());
}

PRF aggregate_multi_ref_prf(const std::vector<PRF>& scores,
                            MultiRefPolicy policy) {
  if (scores.empty())
    throw InputError("aggregate_multi_ref: empty score list");
  if (policy == MultiRefPolicy::kMax) {
    PRF best = scores.front();
    for (const PRF& s : scores) {
      auto key = [](const PRF& p) {
        return std::tuple<double, double, double>(p.f_score, p.precision,
                                                  p.recall);
      };
      if (key(s) > key(best)) best = s;
    }
    return best;
  }
  std::vector<double> ps, rs;
  for (const PRF& s : scores) {
    ps.push_back(s.precision);
    rs.push_back(s.recall);
  }
  PRF out;
  out.precision = aggregate_multi_ref(ps, MultiRefPolicy::kMean);
  out.recall = aggregate_multi_ref(rs, MultiRefPolicy::kMean);
  out.f_score = harmonic_f(out.precision, out.recall);
  return out;
}

PRF rouge_n(const std::string& candidate,
            const std::vector<std::string>& references, int n,
            bool use_stemmer, MultiRefPolicy policy) {
  if (n < 1) throw ParameterError("rouge_n: n must be >= 1");
  if (references.empty()) throw InputError("rouge_n: no references");
  std::vector<std::string> cand_tokens = tokens_of(candidate);
  if (use_stemmer) cand_tokens = stemmed(std::move(cand_tokens));
  NgramMultiset cand = text::ngrams(cand_tokens, n);
  std::vector<PRF> per_ref;
  for (const auto& reference : references) {
    std::vector<std::string> ref_tokens = tokens_of(reference);
    if (use_stemmer) ref_tokens = stemmed(std::move(ref_tokens));
    NgramMultiset ref = text::ngrams(ref_tokens, n);
    per_ref.push_back(
        prf_from_counts(clipped_overlap(cand, ref), cand.total, ref.total));
  }
  return aggregate_multi_ref_prf(per_ref, policy);
}

namespace {

PRF rouge_l_sentence(const std::vector<std::string>& cand,
                     const std::vector<std::string>& ref) {
  long long lcs = text::lcs_length(cand, ref);
  return prf_from_counts(lcs, static_cast<long long>(cand.size()),
                         static_cast<long long>(ref.size()));
}

PRF rouge_l_summary(const std::string& candidate,
                    const std::string& reference) {
  std::vector<TokenSequence> cand_sents = text::split_sentences(candidate);
  std::vector<TokenSequence> ref_sents = text::split_sentences(reference);
  long long cand_total = 0, ref_total = 0;
  std::map<std::string, long long> cand_budget, ref_budget;
  for (const auto& s : cand_sents) {
    cand_total += static_cast<long long>(s.tokens.size());
    for (const auto& t : s.tokens) ++cand_budget[t];
  }
  for (const auto& s : ref_sents) {
    ref_total += static_cast<long long>(s.tokens.size());
    for (const auto& t : s.tokens) ++ref_budget[t];
  }
  long long hits = 0;
  for (const auto& rs : ref_sents) {
    std::set<std::size_t> union_positions;
    for (const auto& cs : cand_sents)
      for (std::size_t p : lcs_positions(rs.tokens, cs.tokens))
        union_positions.insert(p);
    // each token creditable once on both sides
    for (std::size_t p : union_positions) {
      const std::string& tok = rs.tokens[p];
      auto c = cand_budget.find(tok);
      auto r = ref_budget.find(tok);
      if (c != cand_budget.end() && c->second > 0 && r != ref_budget.end() &&
          r->second > 0) {
        ++hits;
        --c->second;
        --r->second;
      }
    }
  }
  return prf_from_counts(hits, cand_total, ref_total);
}

}  // namespace

PRF rouge_l(const std::string& candidate,
            const std::vector<std::string>& references, RougeLMode mode,
            MultiRefPolicy policy) {
  if (references.empty()) throw InputError("rouge_l: no references");
  std::vector<PRF> per_ref;
  if (mode == RougeLMode::kSentence) {
    std::vector<std::string> cand = tokens_of(candidate);
    for (const auto& reference : references)
      per_ref.push_back(rouge_l_sentence(cand, tokens_of(reference)));
  } else {
    for (const auto& reference : references)
      per_ref.push_back(rouge_l_summary(candidate, reference));
  }
  return aggregate_multi_ref_prf(per_ref, policy);
}

double bleu_corpus(const std::vector<std::string>& candidates,
                   const std::vector<std::vector<std::string>>& references,
                   int max_n, BleuSmoothing smoothing) {
  if (candidates.size() != references.size())
    throw InputError("bleu_corpus: candidate/reference count mismatch");
  if (candidates.empty()) throw InputError("bleu_corpus: empty corpus");
  if (max_n < 1) throw ParameterError("bleu_corpus: max_n must be >= 1");
  std::vector<long long> matched(max_n, 0), possible(max_n, 0);
  long long cand_len_total = 0, ref_len_total = 0;
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    if (references[s].empty())
      throw InputError("bleu_corpus: segment without references");
    std::vector<std::string> cand = tokens_of(candidates[s]);
    std::vector<std::vector<std::string>> refs;
    for (const auto& r : references[s]) refs.push_back(tokens_of(r));
    cand_len_total += static_cast<long long>(cand.size());
    // closest reference length, ties to the shorter
    long long best_ref = static_cast<long long>(refs.front().size());
    for (const auto& r : refs) {
      long long len = static_cast<long long>(r.size());
      long long cur = std::llabs(len - static_cast<long long>(cand.size()));
      long long best = std::llabs(best_ref -
                                  static_cast<long long>(cand.size()));
      if (cur < best || (cur == best && len < best_ref)) best_ref = len;
    }
    ref_len_total += best_ref;
    for (int n = 1; n <= max_n; ++n) {
      NgramMultiset cgrams = text::ngrams(cand, n);
      possible[n - 1] += cgrams.total;
      std::map<std::string, long long> max_ref_count;
      for (const auto& r : refs) {
        NgramMultiset rgrams = text::ngrams(r, n);
        for (const auto& [gram, count] : rgrams.counts) {
          long long& cur = max_ref_count[gram];
          cur = std::max<long long>(cur, count);
        }
      }
      for (const auto& [gram, count] : cgrams.counts) {
        auto it = max_ref_count.find(gram);
        if (it != max_ref_count.end())
          matched[n - 1] += std::min<long long>(count, it->second);
      }
    }
  }
  if (cand_len_total == 0) return 0.0;
  double log_sum = 0.0;
  int zeros_seen = 0;
  for (int n = 1; n <= max_n; ++n) {
    long long m = matched[n - 1], l = possible[n - 1];
    double p;
    if (l == 0) return 0.0;  // order unreachable by every candidate
    if (m > 0) {
      p = static_cast<double>(m) / static_cast<double>(l);
    } else {
      switch (smoothing) {
        case BleuSmoothing::kNone:
          return 0.0;
        case BleuSmoothing::kAddOne:
          if (n == 1) return 0.0;
          p = static_cast<double>(m + 1) / static_cast<double>(l + 1);
          break;
        case BleuSmoothing::kExpDecay:
          ++zeros_seen;
          p = 1.0 / (std::ldexp(1.0, zeros_seen) * static_cast<double>(l));
          break;
        default:
          return 0.0;
      }
    }
    log_sum += std::log(p) / static_cast<double>(max_n);
  }
  double brevity = 1.0;
  if (cand_len_total < ref_len_total)
    brevity = std::exp(1.0 - static_cast<double>(ref_len_total) /
                                 static_cast<double>(cand_len_total));
  return brevity * std::exp(log_sum);
}

double chrf(const std::string& candidate,
            const std::vector<std::string>& references, int max_n,
            double beta) {
  if (references.empty()) throw InputError("chrf: no references");
  if (max_n < 1) throw ParameterError("chrf: max_n must be >= 1");
  if (beta <= 0.0) throw ParameterError("chrf: beta must be positive");
  double best = 0.0;
  double beta2 = beta * beta;
  for (const auto& reference : references) {
    double p_sum = 0.0, r_sum = 0.0;
    int included = 0;
    for (int n = 1; n <= max_n; ++n) {
      NgramMultiset cand = text::char_ngrams(candidate, n);
      NgramMultiset ref = text::char_ngrams(reference, n);
      if (cand.total == 0 && ref.total == 0) continue;
      long long overlap = clipped_overlap(cand, ref);
      p_sum += cand.total > 0
                   ? static_cast<double>(overlap) / cand.total
                   : 0.0;
      r_sum += ref.total > 0 ? static_cast<double>(overlap) / ref.total : 0.0;
      ++included;
    }
    if (included == 0) continue;
    double p = p_sum / included, r = r_sum / included;
    double denom = beta2 * p + r;
    double f = denom > 0.0 ? (1.0 + beta2) * p * r / denom : 0.0;
    best = std::max(best, f);
  }
  return best;
}

SynonymTable SynonymTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open synonym table " + path);
  SynonymTable table;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (!tokens.empty()) table.add_set(tokens);
  }
  return table;
}

void SynonymTable::add_set(const std::vector<std::string>& tokens) {
  int id = sets_++;
  for (const auto& t : tokens) membership_[t].push_back(id);
}

bool SynonymTable::related(const std::string& a, const std::string& b) const {
  auto ia = membership_.find(a);
  auto ib = membership_.find(b);
  if (ia == membership_.end() || ib == membership_.end()) return false;
  for (int x : ia->second)
    for (int y : ib->second)
      if (x == y) return true;
  return false;
}

namespace {

double meteor_single(const std::vector<std::string>& cand,
                     const std::vector<std::string>& ref, double alpha,
                     double beta, double gamma,
                     const SynonymTable* synonyms) {
  if (cand.empty() || ref.empty()) return 0.0;
  std::vector<int> cand_to_ref(cand.size(), -1);
  std::vector<bool> ref_used(ref.size(), false);

  auto run_stage = [&](auto&& matches) {
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (cand_to_ref[i] != -1) continue;
      int chosen = -1;
      // prefer extending a chunk: previous candidate token matched j-1
      if (i > 0 && cand_to_ref[i - 1] != -1) {
        std::size_t j = static_cast<std::size_t>(cand_to_ref[i - 1]) + 1;
        if (j < ref.size() && !ref_used[j] && matches(cand[i], ref[j]))
          chosen = static_cast<int>(j);
      }
      if (chosen == -1) {
        for (std::size_t j = 0; j < ref.size(); ++j) {
          if (!ref_used[j] && matches(cand[i], ref[j])) {
            chosen = static_cast<int>(j);
            break;
          }
        }
      }
      if (chosen != -1) {
        cand_to_ref[i] = chosen;
        ref_used[static_cast<std::size_t>(chosen)] = true;
      }
    }
  };

  run_stage([](const std::string& a, const std::string& b) { return a == b; });
  run_stage([](const std::string& a, const std::string& b) {
    return text::porter_stem(a) == text::porter_stem(b);
  });
  if (synonyms != nullptr)
    run_stage([&](const std::string& a, const std::string& b) {
      return synonyms->related(a, b);
    });

  long long m = 0;
  long long chunks = 0;
  int prev_i = -2, prev_j = -2;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (cand_to_ref[i] == -1) continue;
    ++m;
    if (static_cast<int>(i) != prev_i + 1 || cand_to_ref[i] != prev_j + 1)
      ++chunks;
    prev_i = static_cast<int>(i);
    prev_j = cand_to_ref[i];
  }
  if (m == 0) return 0.0;
  double p = static_cast<double>(m) / static_cast<double>(cand.size());
  double r = static_cast<double>(m) / static_cast<double>(ref.size());
  double f_mean = p * r / (alpha * p + (1.0 - alpha) * r);
  double penalty =
      gamma * std::pow(static_cast<double>(chunks) / static_cast<double>(m),
                       beta);
  return f_mean * (1.0 - penalty);
}

}  // namespace

double meteor(const std::string& candidate,
              const std::vector<std::string>& references, double alpha,
              double beta, double gamma, const SynonymTable* synonyms) {
  if (references.empty()) throw InputError("meteor: no references");
  if (alpha <= 0.0 || alpha > 1.0)
    throw ParameterError("meteor: alpha must be in (0,1]");
  if (gamma <= 0.0 || gamma > 1.0)
    throw ParameterError("meteor: gamma must be in (0,1]");
  if (beta <= 0.0) throw ParameterError("meteor: beta must be positive");
  std::vector<std::string> cand = tokens_of(candidate);
  double best = 0.0;
  for (const auto& reference : references)
    best = std::max(best, meteor_single(cand, tokens_of(reference), alpha,
                                        beta, gamma, synonyms));
  return best;
}

}  // namespace summetrics::metrics
