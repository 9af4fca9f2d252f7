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

#ifndef SUMMETRICS_CORPUS_HPP_
#define SUMMETRICS_CORPUS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace summetrics::corpus {

struct SourceDocument {
  std::string example_id;
  std::string text;
  std::vector<std::string> references;  // >= 1, non-empty after trimming
};

struct SystemOutput {
  std::string system_id;
  std::optional<std::string> example_id;
  std::string summary_text;
  std::optional<std::string> reference;  // embedded reference for alignment
};

// Constructed only by align_outputs; carries copies so scoring needs no
// back-reference into the dataset.
struct EvaluationInstance {
  std::string system_id;
  std::string example_id;
  std::string candidate;
  std::vector<std::string> references;
  std::string source;
};

struct UnmatchedOutput {
  SystemOutput output;
  std::string reason;  // "unknown_id", "ambiguous", "no_match", "no_key"
};

struct AlignmentResult {
  std::vector<EvaluationInstance> instances;
  std::vector<UnmatchedOutput> unmatched;
};

struct HumanAnnotation {
  std::string system_id;
  std::string example_id;
  std::string annotator_id;
  std::string annotator_class;  // "expert" or "crowd"
  int round = 1;
  int coherence = 0;
  int consistency = 0;
  int fluency = 0;
  int relevance = 0;

  int dimension(const std::string& name) const;  // throws on unknown name
};

inline const char* const kDimensionNames[4] = {"coherence", "consistency",
                                               "fluency", "relevance"};

struct ExternalScoreRecord {
  std::string metric_name;
  std::string system_id;
  std::string example_id;
  double value = 0.0;
};

// Line-delimited record readers. A malformed line, missing field, or
// invariant violation raises InputError naming the 1-based line number.
std::vector<SourceDocument> load_dataset(const std::string& path);
std::vector<SystemOutput> load_outputs(const std::string& path);
std::vector<HumanAnnotation> load_annotations(const std::string& path);
std::vector<ExternalScoreRecord> load_external_scores(const std::string& path);

void save_dataset(const std::string& path,
                  const std::vector<SourceDocument>& docs);
void save_outputs(const std::string& path,
                  const std::vector<SystemOutput>& outs);
void save_annotations(const std::string& path,
                      const std::vector<HumanAnnotation>& anns);
void save_external_scores(const std::string& path,
                          const std::vector<ExternalScoreRecord>& recs);

// Lowercase, collapse whitespace runs to single spaces, trim ends.
std::string normalize_for_match(const std::string& text);

// Joins outputs to documents: by example_id when present, otherwise by
// normalized equality of the embedded reference against dataset references.
// Every output lands in exactly one of the two result lists.
AlignmentResult align_outputs(const std::vector<SystemOutput>& outputs,
                              const std::vector<SourceDocument>& docs);

// Groups of >= 2 example_ids whose first references are identical after
// normalization, ordered by first occurrence in the dataset.
std::vector<std::vector<std::string>> detect_duplicate_references(
    const std::vector<SourceDocument>& docs);

std::map<std::string, int> annotation_counts_by_class(
    const std::vector<HumanAnnotation>& anns);

}  // namespace summetrics::corpus

#endif  // SUMMETRICS_CORPUS_HPP_
