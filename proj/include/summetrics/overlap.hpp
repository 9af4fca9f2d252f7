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

#ifndef SUMMETRICS_OVERLAP_HPP_
#define SUMMETRICS_OVERLAP_HPP_

#include <map>
#include <string>
#include <vector>

namespace summetrics::metrics {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

// 2pr/(p+r); 0 when p + r == 0.
double harmonic_f(double precision, double recall);

enum class MultiRefPolicy { kMax, kMean };
enum class RougeLMode { kSentence, kSummary };
enum class BleuSmoothing { kNone, kAddOne, kExpDecay };

// Scalar multi-reference reduction. kMean sums in ascending value order so
// the result is invariant under reference reordering.
double aggregate_multi_ref(const std::vector<double>& scores,
                           MultiRefPolicy policy);

// PRF reduction: kMax picks the best (f, p, r) triple lexicographically;
// kMean averages p and r and recomputes the harmonic f.
PRF aggregate_multi_ref_prf(const std::vector<PRF>& scores,
                            MultiRefPolicy policy);

// Clipped n-gram overlap P/R/F per reference, reduced per policy. Empty
// candidate scores 0 on every axis.
PRF rouge_n(const std::string& candidate,
            const std::vector<std::string>& references, int n,
            bool use_stemmer = false,
            MultiRefPolicy policy = MultiRefPolicy::kMax);

// Sentence mode: LCS over the full token sequences. Summary mode:
// union-LCS of each reference sentence against all candidate sentences,
// each token on either side creditable once.
PRF rouge_l(const std::string& candidate,
            const std::vector<std::string>& references,
            RougeLMode mode = RougeLMode::kSentence,
            MultiRefPolicy policy = MultiRefPolicy::kMax);

// Corpus-pooled clipped precisions with uniform geometric mean and brevity
// penalty. Reference length r per segment is the closest to the candidate
// length (ties to the shorter). kAddOne: orders >= 2 with a zero clipped
// count score (m+1)/(l+1). kExpDecay: the k-th zero order scores
// 1/(2^k * l). An order with no candidate n-grams at all scores 0.
double bleu_corpus(const std::vector<std::string>& candidates,
                   const std::vector<std::vector<std::string>>& references,
                   int max_n = 4,
                   BleuSmoothing smoothing = BleuSmoothing::kAddOne);

// Character n-gram F_beta averaged over orders 1..max_n; orders where
// neither side has any n-grams are skipped. Best score over references.
double chrf(const std::string& candidate,
            const std::vector<std::string>& references, int max_n = 6,
            double beta = 2.0);

// Synonym sets, one set per line of whitespace-separated lowercase tokens.
// Two tokens are related when they share at least one set.
class SynonymTable {
 public:
  static SynonymTable load(const std::string& path);
  void add_set(const std::vector<std::string>& tokens);
  bool related(const std::string& a, const std::string& b) const;
  std::size_t set_count() const { return sets_; }

 private:
  std::map<std::string, std::vector<int>> membership_;
  int sets_ = 0;
};

// Staged unigram alignment (exact, then stem, then synonym), fragmentation
// penalty gamma*(chunks/m)^beta, score F_mean*(1-penalty), best reference
// wins. Candidate identical to a reference of m tokens scores exactly
// 1 - gamma*(1/m)^beta.
double meteor(const std::string& candidate,
              const std::vector<std::string>& references, double alpha = 0.9,
              double beta = 3.0, double gamma = 0.5,
              const SynonymTable* synonyms = nullptr);

// Reference-corpus idf shared by every candidate scored against the same
// example set. Scores are 10 * mean over n of the per-reference average
// clipped tf-idf cosine.
class CiderIdf {
 public:
  static CiderIdf build(
      const std::vector<std::vector<std::string>>& references_by_example,
      int max_n = 4);

  std::size_t corpus_size() const { return corpus_size_; }
  // idf collapses to log(1) = 0 on a single-example corpus
  bool degenerate() const { return corpus_size_ < 2; }
  int max_n() const { return max_n_; }

  double score(const std::string& candidate,
               const std::vector<std::string>& references) const;

 private:
  double idf(int n, const std::string& gram) const;
  std::vector<std::map<std::string, int>> doc_freq_;  // per order n-1
  std::size_t corpus_size_ = 0;
  int max_n_ = 4;
};

struct CiderResult {
  std::vector<double> per_example;
  double corpus_mean = 0.0;
  bool degenerate_corpus = false;
};

CiderResult cider(const std::vector<std::string>& candidates,
                  const std::vector<std::vector<std::string>>& references,
                  int max_n = 4);

}  // namespace summetrics::metrics

#endif  // SUMMETRICS_OVERLAP_HPP_
