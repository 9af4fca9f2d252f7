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

#ifndef SUMMETRICS_COMMANDS_HPP_
#define SUMMETRICS_COMMANDS_HPP_

#include <map>
#include <string>
#include <vector>

namespace summetrics::cli {

struct RunConfig {
  std::string dataset_path;
  std::vector<std::string> output_paths;
  std::string annotations_path;
  std::string embeddings_path;
  std::string synonyms_path;
  std::vector<std::string> external_score_paths;
  std::string scores_path;      // defaults to <out>/scores.tsv
  std::string aggregates_path;  // defaults to <out>/aggregates.tsv
  std::vector<std::string> metric_names;  // empty = default set
  std::string out_dir = ".";
  int parallelism = 1;
  std::string multi_ref_policy = "max";
  bool expert_only = false;
  int round_filter = 0;  // 0 = all rounds
  std::string correlation_level = "system";
  std::string coefficient = "kendall_tau_b";

  // every entry ever applied, echoed into the manifest
  std::map<std::string, std::string> effective;
};

// `section.key = value` lines, '#' starts a comment. Unknown keys are
// input errors.
RunConfig load_run_config(const std::string& path);
void apply_config_entry(RunConfig* config, const std::string& key,
                        const std::string& value);

// Exit codes: 0 clean, 1 when the run's error report is non-empty
// (error-flagged cells or unmatched outputs). Validation problems throw.
int cmd_evaluate(const RunConfig& config);
int cmd_correlate(const RunConfig& config);
int cmd_agreement(const RunConfig& config);
int cmd_report(const RunConfig& config);

}  // namespace summetrics::cli

#endif  // SUMMETRICS_COMMANDS_HPP_
