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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "summetrics/commands.hpp"
#include "summetrics/common.hpp"

namespace {

using summetrics::cli::RunConfig;

struct CliOptions {
  std::string config_path;
  std::string dataset;
  std::vector<std::string> outputs;
  std::string annotations;
  std::string embeddings;
  std::string synonyms;
  std::vector<std::string> external_scores;
  std::string scores;
  std::string aggregates;
  std::string metrics;
  std::string out_dir;
  int parallelism = 0;
  std::string multi_ref;
  bool expert_only = false;
  int round = 0;
  std::string level;
  std::string coefficient;
};

void add_common_flags(CLI::App* cmd, CliOptions* opt) {
  cmd->add_option("--config", opt->config_path,
                  "plain-text config file (section.key = value lines)");
  cmd->add_option("--dataset", opt->dataset, "source dataset (jsonl)");
  cmd->add_option("--outputs", opt->outputs, "system output files (jsonl)")
      ->delimiter(',');
  cmd->add_option("--annotations", opt->annotations,
                  "human annotation file (jsonl)");
  cmd->add_option("--embeddings", opt->embeddings,
                  "word vector file (text format)");
  cmd->add_option("--synonyms", opt->synonyms,
                  "synonym sets, one whitespace-separated set per line");
  cmd->add_option("--external-scores", opt->external_scores,
                  "external score files (jsonl)")
      ->delimiter(',');
  cmd->add_option("--scores", opt->scores, "per-example score table (tsv)");
  cmd->add_option("--aggregates", opt->aggregates,
                  "per-system aggregate table (tsv)");
  cmd->add_option("--metrics", opt->metrics,
                  "comma-separated metric names (default: standard set)");
  cmd->add_option("--out", opt->out_dir, "output directory");
  cmd->add_option("--parallelism", opt->parallelism, "worker count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--multi-ref", opt->multi_ref,
                  "multi-reference policy for the rouge family (max|mean)");
  cmd->add_flag("--expert-only", opt->expert_only,
                "keep expert annotations only");
  cmd->add_option("--round", opt->round, "keep one annotation round only")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--level", opt->level, "correlation level (system|summary)");
  cmd->add_option("--coefficient", opt->coefficient,
                  "correlation coefficient (kendall_tau_b|pearson)");
}

std::string join_csv(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ",";
    out += p;
  }
  return out;
}

// Flags override whatever the config file set.
RunConfig build_config(const CliOptions& opt) {
  RunConfig cfg;
  if (!opt.config_path.empty())
    cfg = summetrics::cli::load_run_config(opt.config_path);
  auto set = [&cfg](const std::string& key, const std::string& value) {
    summetrics::cli::apply_config_entry(&cfg, key, value);
  };
  if (!opt.dataset.empty()) set("data.dataset", opt.dataset);
  if (!opt.outputs.empty()) set("data.outputs", join_csv(opt.outputs));
  if (!opt.annotations.empty()) set("data.annotations", opt.annotations);
  if (!opt.embeddings.empty()) set("data.embeddings", opt.embeddings);
  if (!opt.synonyms.empty()) set("data.synonyms", opt.synonyms);
  if (!opt.external_scores.empty())
    set("data.external_scores", join_csv(opt.external_scores));
  if (!opt.scores.empty()) set("data.scores", opt.scores);
  if (!opt.aggregates.empty()) set("data.aggregates", opt.aggregates);
  if (!opt.metrics.empty()) set("run.metrics", opt.metrics);
  if (!opt.out_dir.empty()) set("run.out", opt.out_dir);
  if (opt.parallelism > 0)
    set("run.parallelism", std::to_string(opt.parallelism));
  if (!opt.multi_ref.empty()) set("run.multi_ref", opt.multi_ref);
  if (opt.expert_only) set("correlate.expert_only", "true");
  if (opt.round > 0) set("correlate.round", std::to_string(opt.round));
  if (!opt.level.empty()) set("correlate.level", opt.level);
  if (!opt.coefficient.empty()) set("correlate.coefficient", opt.coefficient);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"summetrics: summarization scoring and meta-evaluation"};
  app.set_version_flag("--version", std::string(summetrics::kToolkitVersion));
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "score system outputs against a dataset");
  CLI::App* correlate = app.add_subcommand(
      "correlate", "correlate metric scores with human annotations");
  CLI::App* agreement = app.add_subcommand(
      "agreement", "inter-annotator agreement and rating dispersion");
  CLI::App* report = app.add_subcommand(
      "report", "combine previous outputs into a single report");
  for (CLI::App* cmd : {evaluate, correlate, agreement, report})
    add_common_flags(cmd, &opt);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = build_config(opt);
    if (evaluate->parsed()) return summetrics::cli::cmd_evaluate(cfg);
    if (correlate->parsed()) return summetrics::cli::cmd_correlate(cfg);
    if (agreement->parsed()) return summetrics::cli::cmd_agreement(cfg);
    return summetrics::cli::cmd_report(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
