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

#include "summetrics/commands.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "summetrics/analytics.hpp"
#include "summetrics/common.hpp"
#include "summetrics/corpus.hpp"
#include "summetrics/embedding.hpp"
#include "summetrics/engine.hpp"
#include "summetrics/overlap.hpp"
#include "summetrics/score_table.hpp"

namespace summetrics::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Single write path for every artifact the commands produce.
void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
  if (!out) throw InputError("short write: " + path);
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_positive_int(const std::string& key, const std::string& value) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(value, &pos);
  } catch (const std::exception&) {
    throw InputError("config " + key + ": not an integer: " + value);
  }
  if (pos != value.size() || v < 1)
    throw InputError("config " + key + ": expected a positive integer, got " +
                     value);
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw InputError("config " + key + ": expected true/false, got " + value);
}

metrics::MultiRefPolicy policy_from(const RunConfig& config) {
  if (config.multi_ref_policy == "max") return metrics::MultiRefPolicy::kMax;
  if (config.multi_ref_policy == "mean") return metrics::MultiRefPolicy::kMean;
  throw InputError("config run.multi_ref: expected max or mean, got " +
                   config.multi_ref_policy);
}

std::string default_in_out(const RunConfig& config, const std::string& given,
                           const std::string& name) {
  if (!given.empty()) return given;
  return (std::filesystem::path(config.out_dir) / name).string();
}

std::string digest_file(const std::string& path) {
  return fnv1a64_hex(read_file(path));
}

std::vector<std::string> resolve_metric_names(
    const RunConfig& config, const engine::MetricRegistry& registry) {
  bool with_embeddings = !config.embeddings_path.empty();
  std::vector<std::string> names =
      config.metric_names.empty()
          ? engine::MetricRegistry::default_metrics(with_embeddings)
          : config.metric_names;
  for (const auto& name : names) {
    const auto& def = registry.at(name);
    if (def.needs_embeddings && !with_embeddings)
      throw InputError("metric '" + name +
                       "' requires data.embeddings to be configured");
  }
  return names;
}

std::string manifest_text(const RunConfig& config,
                          const std::vector<std::string>& metric_names,
                          const engine::MetricRegistry& registry,
                          const std::string& status) {
  std::ostringstream out;
  out << "toolkit_version\t" << kToolkitVersion << "\n";
  out << "status\t" << status << "\n";
  for (const auto& [key, value] : config.effective)
    out << "config\t" << key << "=" << value << "\n";
  {
    std::string joined;
    for (const auto& name : metric_names) {
      if (!joined.empty()) joined += ",";
      joined += name;
    }
    out << "config\tresolved.metrics=" << joined << "\n";
  }
  std::vector<std::string> inputs;
  inputs.push_back(config.dataset_path);
  for (const auto& p : config.output_paths) inputs.push_back(p);
  if (!config.embeddings_path.empty()) inputs.push_back(config.embeddings_path);
  if (!config.synonyms_path.empty()) inputs.push_back(config.synonyms_path);
  if (!config.annotations_path.empty())
    inputs.push_back(config.annotations_path);
  for (const auto& p : config.external_score_paths) inputs.push_back(p);
  for (const auto& p : inputs)
    out << "input\t" << p << "\t" << digest_file(p) << "\n";
  for (const auto& name : metric_names)
    out << "fingerprint\t" << name << "\t"
        << engine::config_fingerprint(registry.at(name).config) << "\n";
  return out.str();
}

std::string unmatched_tsv(const std::vector<corpus::UnmatchedOutput>& rows) {
  std::ostringstream out;
  out << "system_id\texample_id\treason\n";
  // Rows sorted so the report does not depend on output file order.
  std::vector<std::array<std::string, 3>> sorted;
  for (const auto& row : rows)
    sorted.push_back({row.output.system_id,
                      row.output.example_id ? *row.output.example_id : "-",
                      row.reason});
  std::sort(sorted.begin(), sorted.end());
  for (const auto& r : sorted) out << r[0] << "\t" << r[1] << "\t" << r[2] << "\n";
  return out.str();
}

analytics::CorrelationLevel level_from(const RunConfig& config) {
  if (config.correlation_level == "system")
    return analytics::CorrelationLevel::kSystem;
  if (config.correlation_level == "summary")
    return analytics::CorrelationLevel::kSummary;
  throw InputError("config correlate.level: expected system or summary, got " +
                   config.correlation_level);
}

analytics::Coefficient coefficient_from(const RunConfig& config) {
  if (config.coefficient == "kendall_tau_b")
    return analytics::Coefficient::kKendallTauB;
  if (config.coefficient == "pearson")
    return analytics::Coefficient::kPearson;
  throw InputError(
      "config correlate.coefficient: expected kendall_tau_b or pearson, got " +
      config.coefficient);
}

std::vector<corpus::HumanAnnotation> load_filtered_annotations(
    const RunConfig& config) {
  if (config.annotations_path.empty())
    throw InputError("data.annotations is required for this command");
  auto all = corpus::load_annotations(config.annotations_path);
  std::vector<corpus::HumanAnnotation> kept;
  for (const auto& a : all) {
    if (config.expert_only && a.annotator_class != "expert") continue;
    if (config.round_filter > 0 && a.round != config.round_filter) continue;
    kept.push_back(a);
  }
  if (kept.empty())
    throw InputError("no annotations left after filters");
  return kept;
}

// Aggregate rows re-enter the table as overrides. Stored values round-trip
// exactly, so recomputable means are unchanged and pooled rows survive.
void load_aggregate_overrides(const std::string& path, ScoreTable* table) {
  std::istringstream in(read_file(path));
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      continue;
    }
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string system_id, metric, value;
    if (!std::getline(row, system_id, '\t') ||
        !std::getline(row, metric, '\t') || !std::getline(row, value, '\t'))
      throw InputError("malformed aggregate row: " + line);
    table->set_aggregate_override(system_id, metric, std::stod(value));
  }
}

std::string format_alpha_cell(const std::optional<double>& alpha) {
  return alpha ? format_double(*alpha) : "NA";
}

}  // namespace

void apply_config_entry(RunConfig* config, const std::string& key,
                        const std::string& value) {
  if (key == "data.dataset") {
    config->dataset_path = value;
  } else if (key == "data.outputs") {
    config->output_paths = split_csv(value);
  } else if (key == "data.annotations") {
    config->annotations_path = value;
  } else if (key == "data.embeddings") {
    config->embeddings_path = value;
  } else if (key == "data.synonyms") {
    config->synonyms_path = value;
  } else if (key == "data.external_scores") {
    config->external_score_paths = split_csv(value);
  } else if (key == "data.scores") {
    config->scores_path = value;
  } else if (key == "data.aggregates") {
    config->aggregates_path = value;
  } else if (key == "run.metrics") {
    config->metric_names = split_csv(value);
  } else if (key == "run.out") {
    config->out_dir = value;
  } else if (key == "run.parallelism") {
    config->parallelism = parse_positive_int(key, value);
  } else if (key == "run.multi_ref") {
    if (value != "max" && value != "mean")
      throw InputError("config run.multi_ref: expected max or mean, got " +
                       value);
    config->multi_ref_policy = value;
  } else if (key == "correlate.level") {
    if (value != "system" && value != "summary")
      throw InputError("config correlate.level: expected system or summary, "
                       "got " + value);
    config->correlation_level = value;
  } else if (key == "correlate.coefficient") {
    if (value != "kendall_tau_b" && value != "pearson")
      throw InputError(
          "config correlate.coefficient: expected kendall_tau_b or pearson, "
          "got " + value);
    config->coefficient = value;
  } else if (key == "correlate.expert_only") {
    config->expert_only = parse_bool(key, value);
  } else if (key == "correlate.round") {
    config->round_filter = parse_positive_int(key, value);
  } else {
    throw InputError("unknown config key: " + key);
  }
  config->effective[key] = value;
}

RunConfig load_run_config(const std::string& path) {
  RunConfig config;
  std::istringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config line " + std::to_string(line_no) +
                       ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw InputError("config line " + std::to_string(line_no) +
                       ": empty key");
    apply_config_entry(&config, key, value);
  }
  return config;
}

int cmd_evaluate(const RunConfig& config) {
  if (config.dataset_path.empty())
    throw InputError("evaluate: data.dataset is required");
  if (config.output_paths.empty())
    throw InputError("evaluate: data.outputs is required");

  engine::MetricRegistry registry =
      engine::MetricRegistry::standard(policy_from(config));
  // Validation happens before any input is read or any file written.
  std::vector<std::string> metric_names =
      resolve_metric_names(config, registry);

  auto docs = corpus::load_dataset(config.dataset_path);
  std::vector<corpus::SystemOutput> outputs;
  for (const auto& path : config.output_paths) {
    auto part = corpus::load_outputs(path);
    outputs.insert(outputs.end(), part.begin(), part.end());
  }
  auto alignment = corpus::align_outputs(outputs, docs);

  embedding::EmbeddingTable embeddings;
  metrics::SynonymTable synonyms;
  engine::MetricContext ctx;
  if (!config.embeddings_path.empty()) {
    embeddings = embedding::EmbeddingTable::load(config.embeddings_path);
    ctx.embeddings = &embeddings;
  }
  if (!config.synonyms_path.empty()) {
    synonyms = metrics::SynonymTable::load(config.synonyms_path);
    ctx.synonyms = &synonyms;
  }

  std::filesystem::create_directories(config.out_dir);
  auto out_path = [&](const std::string& name) {
    return (std::filesystem::path(config.out_dir) / name).string();
  };

  // Two-phase manifest: readers never see score files without a manifest,
  // and never see status complete next to partial results.
  write_file(out_path("manifest.txt"),
             manifest_text(config, metric_names, registry, "incomplete"));

  ScoreTable scores = engine::evaluate_batch(
      alignment.instances, metric_names, registry, config.parallelism, ctx);
  for (const auto& path : config.external_score_paths)
    scores.merge_external(corpus::load_external_scores(path));

  write_file(out_path("scores.tsv"), scores.to_tsv());
  write_file(out_path("aggregates.tsv"), scores.aggregates_to_tsv());
  write_file(out_path("unmatched.tsv"), unmatched_tsv(alignment.unmatched));
  write_file(out_path("manifest.txt"),
             manifest_text(config, metric_names, registry, "complete"));

  size_t error_cells = 0;
  for (const auto& [key, cell] : scores.cells())
    if (cell.flag == "error") ++error_cells;
  return (error_cells > 0 || !alignment.unmatched.empty()) ? 1 : 0;
}

int cmd_correlate(const RunConfig& config) {
  std::string scores_path =
      default_in_out(config, config.scores_path, "scores.tsv");
  std::string aggregates_path =
      default_in_out(config, config.aggregates_path, "aggregates.tsv");

  ScoreTable table = ScoreTable::from_tsv(read_file(scores_path));
  if (std::filesystem::exists(aggregates_path))
    load_aggregate_overrides(aggregates_path, &table);
  for (const auto& path : config.external_score_paths)
    table.merge_external(corpus::load_external_scores(path));

  auto annotations = load_filtered_annotations(config);
  if (table.systems().size() < 2)
    throw InputError("correlate: need at least 2 systems, found " +
                     std::to_string(table.systems().size()));

  auto level = level_from(config);
  auto coefficient = coefficient_from(config);

  auto human = analytics::metric_human_report(table, annotations, level,
                                              coefficient);
  auto pairwise = analytics::pairwise_metric_matrix(table, coefficient, level);

  std::filesystem::create_directories(config.out_dir);
  auto out_path = [&](const std::string& name) {
    return (std::filesystem::path(config.out_dir) / name).string();
  };
  write_file(out_path("correlation_human.tsv"), human.to_tsv());
  write_file(out_path("correlation_human.meta.txt"), human.meta_block());
  write_file(out_path("correlation_metrics.tsv"), pairwise.to_tsv());
  write_file(out_path("correlation_metrics.meta.txt"), pairwise.meta_block());
  return 0;
}

int cmd_agreement(const RunConfig& config) {
  auto annotations = load_filtered_annotations(config);

  // Groups: each (class, round) seen, a per-class pool across rounds, and
  // an overall pool. Round 0 in a selector means "all rounds".
  std::set<std::pair<std::string, int>> groups;
  for (const auto& a : annotations) {
    groups.insert({a.annotator_class, a.round});
    groups.insert({a.annotator_class, 0});
    groups.insert({"all", 0});
  }

  auto select = [&](const std::pair<std::string, int>& group) {
    std::vector<corpus::HumanAnnotation> kept;
    for (const auto& a : annotations) {
      if (group.first != "all" && a.annotator_class != group.first) continue;
      if (group.second != 0 && a.round != group.second) continue;
      kept.push_back(a);
    }
    return kept;
  };
  auto round_label = [](int round) {
    return round == 0 ? std::string("all") : std::to_string(round);
  };

  std::ostringstream agreement;
  agreement << "class\tround\tdimension\talpha\n";
  std::ostringstream dispersion;
  dispersion << "class\tround\tdimension\tbin_lo\tbin_hi\tcount\n";
  for (const auto& group : groups) {
    auto subset = select(group);
    std::vector<std::vector<double>> pooled_units;
    for (const char* dimension : corpus::kDimensionNames) {
      auto units = analytics::pivot_units(subset, dimension);
      pooled_units.insert(pooled_units.end(), units.begin(), units.end());
      auto alpha = analytics::krippendorff_alpha_interval(units);
      agreement << group.first << "\t" << round_label(group.second) << "\t"
                << dimension << "\t" << format_alpha_cell(alpha) << "\n";
      if (group.second == 0) continue;  // histograms per concrete round only
      auto spread = analytics::score_dispersion(subset, dimension);
      for (int b = 0; b < 8; ++b) {
        dispersion << group.first << "\t" << round_label(group.second) << "\t"
                   << dimension << "\t" << format_double(0.25 * b) << "\t"
                   << format_double(0.25 * (b + 1)) << "\t"
                   << spread.histogram[b] << "\n";
      }
    }
    // one number for the whole group: units of all four dimensions pooled
    agreement << group.first << "\t" << round_label(group.second) << "\t"
              << "all\t"
              << format_alpha_cell(
                     analytics::krippendorff_alpha_interval(pooled_units))
              << "\n";
  }

  std::filesystem::create_directories(config.out_dir);
  auto out_path = [&](const std::string& name) {
    return (std::filesystem::path(config.out_dir) / name).string();
  };
  write_file(out_path("agreement.tsv"), agreement.str());
  write_file(out_path("dispersion.tsv"), dispersion.str());
  return 0;
}

int cmd_report(const RunConfig& config) {
  auto out_path = [&](const std::string& name) {
    return (std::filesystem::path(config.out_dir) / name).string();
  };
  std::vector<std::string> required = {"manifest.txt", "aggregates.tsv"};
  std::vector<std::string> missing;
  for (const auto& name : required)
    if (!std::filesystem::exists(out_path(name))) missing.push_back(name);
  if (!missing.empty()) {
    std::string joined;
    for (const auto& m : missing) {
      if (!joined.empty()) joined += ", ";
      joined += m;
    }
    throw InputError("report: missing " + joined + "; run evaluate first");
  }

  std::ostringstream report;
  report << "summetrics report\n";
  report << "=================\n\n";

  report << "[scores]\n";
  // aggregates.tsv pivots into a system x metric table.
  {
    std::istringstream in(read_file(out_path("aggregates.tsv")));
    std::map<std::string, std::map<std::string, std::string>> by_system;
    std::set<std::string> metric_cols;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) {
        first = false;
        continue;
      }
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string system_id, metric, value;
      std::getline(row, system_id, '\t');
      std::getline(row, metric, '\t');
      std::getline(row, value, '\t');
      by_system[system_id][metric] = value;
      metric_cols.insert(metric);
    }
    report << "system_id";
    for (const auto& m : metric_cols) report << "\t" << m;
    report << "\n";
    for (const auto& [system_id, row] : by_system) {
      report << system_id;
      for (const auto& m : metric_cols) {
        auto it = row.find(m);
        report << "\t" << (it == row.end() ? "NA" : it->second);
      }
      report << "\n";
    }
  }
  report << "\n";

  report << "[correlation]\n";
  if (std::filesystem::exists(out_path("correlation_human.tsv"))) {
    report << read_file(out_path("correlation_human.tsv"));
    report << "\n" << read_file(out_path("correlation_human.meta.txt"));
    if (std::filesystem::exists(out_path("correlation_metrics.tsv"))) {
      report << "\n" << read_file(out_path("correlation_metrics.tsv"));
      report << "\n" << read_file(out_path("correlation_metrics.meta.txt"));
    }
  } else {
    report << "omitted: no correlation files found; run correlate to add "
              "this section\n";
  }
  report << "\n";

  report << "[agreement]\n";
  if (std::filesystem::exists(out_path("agreement.tsv"))) {
    report << read_file(out_path("agreement.tsv"));
    if (std::filesystem::exists(out_path("dispersion.tsv")))
      report << "\n" << read_file(out_path("dispersion.tsv"));
  } else {
    report << "omitted: no agreement file found; run agreement to add this "
              "section\n";
  }
  report << "\n";

  report << "[fingerprints]\n";
  {
    std::istringstream in(read_file(out_path("manifest.txt")));
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("fingerprint\t", 0) == 0 ||
          line.rfind("toolkit_version\t", 0) == 0)
        report << line << "\n";
    }
  }

  write_file(out_path("report.txt"), report.str());
  return 0;
}

}  // namespace summetrics::cli
