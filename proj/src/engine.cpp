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
#include <atomic>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "summetrics/common.hpp"
#include "summetrics/engine.hpp"
#include "summetrics/extractive.hpp"
#include "summetrics/text.hpp"

namespace summetrics::engine {
namespace {

using corpus::EvaluationInstance;

std::vector<std::string> tokens_of(const std::string& s) {
  return text::tokenize(s).tokens;
}

MetricResult prf_result(const metrics::PRF& prf) {
  return {prf.f_score, ""};
}

const char* policy_name(metrics::MultiRefPolicy policy) {
  return policy == metrics::MultiRefPolicy::kMax ? "max" : "mean";
}

MetricDefinition rouge_n_def(int n, metrics::MultiRefPolicy policy) {
  MetricDefinition def;
  def.config = {"rouge_n",
                {{"n", std::to_string(n)},
                 {"stemmer", "off"},
                 {"multi_ref", policy_name(policy)}}};
  def.needs_references = true;
  def.score = [n, policy](const EvaluationInstance& inst,
                          const MetricContext&) {
    return prf_result(
        metrics::rouge_n(inst.candidate, inst.references, n, false, policy));
  };
  return def;
}

MetricDefinition rouge_we_def(int n, metrics::MultiRefPolicy policy) {
  MetricDefinition def;
  def.config = {"rouge_we_n",
                {{"n", std::to_string(n)},
                 {"sim_threshold", "0.8"},
                 {"multi_ref", policy_name(policy)}}};
  def.needs_references = true;
  def.needs_embeddings = true;
  def.score = [n, policy](const EvaluationInstance& inst,
                          const MetricContext& ctx) {
    return prf_result(embedding::rouge_we_n(inst.candidate, inst.references,
                                            n, *ctx.embeddings, 0.8, policy));
  };
  return def;
}

MetricDefinition sms_def(embedding::SmsVariant variant, const char* name) {
  MetricDefinition def;
  def.config = {name, {{"ground_metric", "euclidean"}, {"multi_ref", "max"}}};
  def.needs_references = true;
  def.needs_embeddings = true;
  def.score = [variant](const EvaluationInstance& inst,
                        const MetricContext& ctx) {
    std::vector<double> sims;
    bool all_oov = true;
    for (const auto& reference : inst.references) {
      embedding::SmsResult r = embedding::sms_family(
          inst.candidate, reference, *ctx.embeddings, variant);
      sims.push_back(r.similarity);
      all_oov = all_oov && r.all_oov;
    }
    double best =
        metrics::aggregate_multi_ref(sims, metrics::MultiRefPolicy::kMax);
    return MetricResult{best, all_oov ? "oov_all" : ""};
  };
  return def;
}

MetricDefinition novelty_def(int n) {
  MetricDefinition def;
  def.config = {"novelty", {{"n", std::to_string(n)}}};
  def.needs_source = true;
  def.score = [n](const EvaluationInstance& inst, const MetricContext&) {
    return MetricResult{stats::novelty(tokens_of(inst.source),
                                       tokens_of(inst.candidate), n),
                        ""};
  };
  return def;
}

MetricDefinition redundancy_def(int n) {
  MetricDefinition def;
  def.config = {"redundancy", {{"n", std::to_string(n)}}};
  def.score = [n](const EvaluationInstance& inst, const MetricContext&) {
    return MetricResult{stats::redundancy(tokens_of(inst.candidate), n), ""};
  };
  return def;
}

}  // namespace

std::string config_fingerprint(const MetricConfig& config) {
  std::string canonical = "metric=" + config.metric_name + ";";
  for (const auto& [key, value] : config.parameters)
    canonical += key + "=" + value + ";";
  return fnv1a64_hex(canonical);
}

void MetricRegistry::add(const std::string& name,
                         MetricDefinition definition) {
  definitions_[name] = std::move(definition);
}

bool MetricRegistry::contains(const std::string& name) const {
  return definitions_.count(name) > 0;
}

const MetricDefinition& MetricRegistry::at(const std::string& name) const {
  auto it = definitions_.find(name);
  if (it == definitions_.end())
    throw ParameterError("unknown metric '" + name + "'");
  return it->second;
}

std::vector<std::string> MetricRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, def] : definitions_) out.push_back(name);
  return out;
}

std::vector<std::string> MetricRegistry::default_metrics(
    bool with_embeddings) {
  std::vector<std::string> names = {
      "rouge_1",      "rouge_2",      "rouge_3",      "rouge_l",
      "bleu",         "chrf",         "meteor",       "cider",
      "coverage",     "density",      "compression",  "novelty_1",
      "novelty_2",    "novelty_3",    "redundancy_1", "redundancy_2",
      "redundancy_3", "length"};
  if (with_embeddings) {
    names.push_back("rouge_we_1");
    names.push_back("wms");
    names.push_back("sms");
    names.push_back("swms");
  }
  return names;
}

MetricRegistry MetricRegistry::standard(metrics::MultiRefPolicy multi_ref) {
  MetricRegistry reg;
  reg.add("rouge_1", rouge_n_def(1, multi_ref));
  reg.add("rouge_2", rouge_n_def(2, multi_ref));
  reg.add("rouge_3", rouge_n_def(3, multi_ref));

  MetricDefinition rouge_l;
  rouge_l.config = {"rouge_l",
                    {{"mode", "sentence"}, {"multi_ref", policy_name(multi_ref)}}};
  rouge_l.needs_references = true;
  rouge_l.score = [multi_ref](const EvaluationInstance& inst,
                              const MetricContext&) {
    return prf_result(metrics::rouge_l(inst.candidate, inst.references,
                                       metrics::RougeLMode::kSentence,
                                       multi_ref));
  };
  reg.add("rouge_l", rouge_l);

  MetricDefinition bleu;
  bleu.config = {"bleu", {{"max_n", "4"}, {"smoothing", "add_one"}}};
  bleu.needs_references = true;
  bleu.corpus_pooled = true;
  bleu.score = [](const EvaluationInstance& inst, const MetricContext&) {
    return MetricResult{
        metrics::bleu_corpus({inst.candidate}, {inst.references}), ""};
  };
  bleu.corpus_score = [](const std::vector<std::string>& candidates,
                         const std::vector<std::vector<std::string>>& refs) {
    return metrics::bleu_corpus(candidates, refs);
  };
  reg.add("bleu", bleu);

  MetricDefinition chrf;
  chrf.config = {"chrf", {{"max_n", "6"}, {"beta", "2"}}};
  chrf.needs_references = true;
  chrf.score = [](const EvaluationInstance& inst, const MetricContext&) {
    return MetricResult{metrics::chrf(inst.candidate, inst.references), ""};
  };
  reg.add("chrf", chrf);

  MetricDefinition meteor;
  meteor.config = {
      "meteor",
      {{"alpha", "0.9"}, {"beta", "3"}, {"gamma", "0.5"}, {"stages",
                                                           "exact,stem,synonym"}}};
  meteor.needs_references = true;
  meteor.score = [](const EvaluationInstance& inst, const MetricContext& ctx) {
    return MetricResult{metrics::meteor(inst.candidate, inst.references, 0.9,
                                        3.0, 0.5, ctx.synonyms),
                        ""};
  };
  reg.add("meteor", meteor);

  MetricDefinition cider;
  cider.config = {"cider", {{"max_n", "4"}, {"multi_ref", "mean"}}};
  cider.needs_references = true;
  cider.corpus_prepass = true;
  cider.score = [](const EvaluationInstance& inst, const MetricContext& ctx) {
    if (ctx.cider_idf != nullptr) {
      double v = ctx.cider_idf->score(inst.candidate, inst.references);
      return MetricResult{
          v, ctx.cider_idf->degenerate() ? "degenerate_corpus" : ""};
    }
    metrics::CiderIdf idf = metrics::CiderIdf::build({inst.references});
    return MetricResult{idf.score(inst.candidate, inst.references),
                        "degenerate_corpus"};
  };
  reg.add("cider", cider);

  MetricDefinition coverage;
  coverage.config = {"coverage", {}};
  coverage.needs_source = true;
  coverage.score = [](const EvaluationInstance& inst, const MetricContext&) {
    return MetricResult{
        stats::coverage(
            stats::extractive_fragments_text(inst.source, inst.candidate)),
        ""};
  };
  reg.add("coverage", coverage);

  MetricDefinition density;
  density.config = {"density", {}};
  density.needs_source = true;
  density.score = [](const EvaluationInstance& inst, const MetricContext&) {
    return MetricResult{
        stats::density(
            stats::extractive_fragments_text(inst.source, inst.candidate)),
        ""};
  };
  reg.add("density", density);

  MetricDefinition compression;
  compression.config = {"compression", {}};
  compression.needs_source = true;
  compression.score = [](const EvaluationInstance& inst,
                         const MetricContext&) {
    return MetricResult{stats::compression(tokens_of(inst.source),
                                           tokens_of(inst.candidate)),
                        ""};
  };
  reg.add("compression", compression);

  reg.add("novelty_1", novelty_def(1));
  reg.add("novelty_2", novelty_def(2));
  reg.add("novelty_3", novelty_def(3));
  reg.add("redundancy_1", redundancy_def(1));
  reg.add("redundancy_2", redundancy_def(2));
  reg.add("redundancy_3", redundancy_def(3));

  MetricDefinition length;
  length.config = {"length", {}};
  length.score = [](const EvaluationInstance& inst, const MetricContext&) {
    return MetricResult{
        static_cast<double>(stats::summary_length(inst.candidate)), ""};
  };
  reg.add("length", length);

  reg.add("rouge_we_1", rouge_we_def(1, multi_ref));
  reg.add("rouge_we_2", rouge_we_def(2, multi_ref));
  reg.add("rouge_we_3", rouge_we_def(3, multi_ref));
  reg.add("wms", sms_def(embedding::SmsVariant::kWms, "wms"));
  reg.add("sms", sms_def(embedding::SmsVariant::kSms, "sms"));
  reg.add("swms", sms_def(embedding::SmsVariant::kSwms, "swms"));
  return reg;
}

namespace {

MetricResult score_one(const MetricDefinition& def,
                       const EvaluationInstance& instance,
                       const MetricContext& context) {
  if (def.needs_embeddings && context.embeddings == nullptr)
    return {0.0, "error"};
  try {
    return def.score(instance, context);
  } catch (const std::exception&) {
    return {0.0, "error"};  // isolation: other cells stay unaffected
  }
}

}  // namespace

std::map<std::string, MetricResult> evaluate_example(
    const corpus::EvaluationInstance& instance,
    const std::vector<std::string>& metric_names,
    const MetricRegistry& registry, const MetricContext& context) {
  for (const auto& name : metric_names) registry.at(name);  // validate first
  std::map<std::string, MetricResult> out;
  bool empty_candidate = tokens_of(instance.candidate).empty();
  for (const auto& name : metric_names) {
    if (empty_candidate) {
      out[name] = {0.0, "empty_candidate"};
      continue;
    }
    out[name] = score_one(registry.at(name), instance, context);
  }
  return out;
}

ScoreTable evaluate_batch(
    const std::vector<corpus::EvaluationInstance>& instances,
    const std::vector<std::string>& metric_names,
    const MetricRegistry& registry, int parallelism,
    const MetricContext& context) {
  for (const auto& name : metric_names) registry.at(name);
  if (parallelism < 1)
    throw ParameterError("evaluate_batch: parallelism must be >= 1");

  std::vector<std::string> per_example_metrics, pooled_metrics;
  bool want_prepass = false;
  for (const auto& name : metric_names) {
    const MetricDefinition& def = registry.at(name);
    if (def.corpus_pooled)
      pooled_metrics.push_back(name);
    else
      per_example_metrics.push_back(name);
    want_prepass = want_prepass || def.corpus_prepass;
  }

  // read-only corpus pre-pass: idf over the distinct examples of the batch
  metrics::CiderIdf idf;
  MetricContext ctx = context;
  if (want_prepass && !instances.empty()) {
    std::map<std::string, const std::vector<std::string>*> by_example;
    for (const auto& inst : instances)
      by_example.emplace(inst.example_id, &inst.references);
    std::vector<std::vector<std::string>> references_by_example;
    for (const auto& [id, refs] : by_example)
      references_by_example.push_back(*refs);
    idf = metrics::CiderIdf::build(references_by_example);
    ctx.cider_idf = &idf;
  }

  // fan out to workers; slot per instance keeps results order-stable
  std::vector<std::map<std::string, MetricResult>> slots(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) break;
      slots[i] =
          evaluate_example(instances[i], per_example_metrics, registry, ctx);
    }
  };
  if (parallelism == 1 || instances.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    int n_workers = std::min<int>(parallelism,
                                  static_cast<int>(instances.size()));
    threads.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  ScoreTable table;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (const auto& [metric, result] : slots[i])
      table.set(instances[i].system_id, instances[i].example_id, metric,
                result.value, result.flag);

  // corpus-pooled metrics: one score per system, aggregate row only
  for (const auto& name : pooled_metrics) {
    const MetricDefinition& def = registry.at(name);
    if (!def.corpus_score) continue;
    std::map<std::string, std::pair<std::vector<std::string>,
                                    std::vector<std::vector<std::string>>>>
        by_system;
    for (const auto& inst : instances) {
      auto& entry = by_system[inst.system_id];
      entry.first.push_back(inst.candidate);
      entry.second.push_back(inst.references);
    }
    for (const auto& [system, segments] : by_system) {
      try {
        double score = def.corpus_score(segments.first, segments.second);
        table.set_aggregate_override(system, name, score);
      } catch (const std::exception&) {
        // pooled failure leaves the aggregate row absent
      }
    }
  }

  for (const auto& name : metric_names)
    table.set_fingerprint(name, config_fingerprint(registry.at(name).config));
  return table;
}

}  // namespace summetrics::engine
