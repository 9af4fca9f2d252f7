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

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracle_helpers.hpp"
#include "summetrics/common.hpp"
#include "summetrics/engine.hpp"

using namespace summetrics;
using namespace summetrics::engine;

namespace {

corpus::EvaluationInstance instance(const std::string& system_id,
                                    const std::string& example_id,
                                    const std::string& candidate,
                                    std::vector<std::string> references,
                                    const std::string& source) {
  corpus::EvaluationInstance inst;
  inst.system_id = system_id;
  inst.example_id = example_id;
  inst.candidate = candidate;
  inst.references = std::move(references);
  inst.source = source;
  return inst;
}

// small synthetic corpus with overlapping vocabulary and two systems
std::vector<corpus::EvaluationInstance> synthetic_batch(int examples) {
  std::vector<corpus::EvaluationInstance> out;
  oracle::Rng rng(53);
  const std::vector<std::string> vocab = {"the", "cat", "dog", "sat",
                                          "ran",  "on", "mat", "rug",
                                          "fast", "slow"};
  for (int e = 0; e < examples; ++e) {
    std::string id = "ex" + std::to_string(e);
    auto sentence = [&](std::size_t len) {
      std::string s;
      for (std::size_t i = 0; i < len; ++i)
        s += (s.empty() ? "" : " ") + vocab[rng.below(vocab.size())];
      return s;
    };
    std::string source = sentence(12) + ". " + sentence(9) + ".";
    std::vector<std::string> refs = {sentence(6), sentence(7)};
    out.push_back(
        instance("sysA", id, sentence(5 + rng.below(4)), refs, source));
    out.push_back(
        instance("sysB", id, sentence(5 + rng.below(4)), refs, source));
  }
  return out;
}

}  // namespace

TEST_CASE("fingerprints are stable, order-free, and parameter-sensitive") {
  MetricConfig a{"rouge_n", {{"n", "1"}, {"stemmer", "off"}}};
  MetricConfig b{"rouge_n", {{"stemmer", "off"}, {"n", "1"}}};
  MetricConfig c{"rouge_n", {{"n", "2"}, {"stemmer", "off"}}};
  CHECK(config_fingerprint(a) == config_fingerprint(b));
  CHECK(config_fingerprint(a) != config_fingerprint(c));
  CHECK(config_fingerprint(a).size() == 16);
}

TEST_CASE("registry knows the standard metric set") {
  MetricRegistry reg = MetricRegistry::standard();
  for (const auto& name : MetricRegistry::default_metrics(true))
    CHECK(reg.contains(name));
  CHECK_THROWS_AS(reg.at("rouge_9000"), ParameterError);
}

TEST_CASE("multi-reference policy moves the rouge fingerprints only") {
  MetricRegistry max_reg = MetricRegistry::standard();
  MetricRegistry mean_reg =
      MetricRegistry::standard(metrics::MultiRefPolicy::kMean);
  CHECK(config_fingerprint(max_reg.at("rouge_1").config) !=
        config_fingerprint(mean_reg.at("rouge_1").config));
  CHECK(config_fingerprint(max_reg.at("bleu").config) ==
        config_fingerprint(mean_reg.at("bleu").config));
}

TEST_CASE("evaluate_example produces a value for every requested metric") {
  auto inst = instance("sysA", "e1", "the cat sat on the mat",
                       {"the cat sat on a mat"},
                       "the cat sat on the mat near the door");
  auto metric_names = MetricRegistry::default_metrics(false);
  auto results = evaluate_example(inst, metric_names,
                                  MetricRegistry::standard());
  REQUIRE(results.size() == metric_names.size());
  for (const auto& [name, result] : results) {
    CAPTURE(name);
    CHECK(std::isfinite(result.value));
    if (name != "cider") CHECK(result.flag.empty());
  }
  // no batch context: cider runs on a one-example corpus
  CHECK(results.at("cider").flag == "degenerate_corpus");
  CHECK(results.at("length").value == 6.0);
  CHECK(results.at("rouge_1").value ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("unknown metric names fail before any scoring") {
  auto inst = instance("s", "e", "a", {"a"}, "a");
  CHECK_THROWS_AS(
      evaluate_example(inst, {"length", "made_up"}, MetricRegistry::standard()),
      ParameterError);
}

TEST_CASE("empty candidates flag every cell") {
  auto inst = instance("s", "e", "  ...  ", {"a b"}, "a b c");
  auto results = evaluate_example(inst, {"rouge_1", "length", "bleu"},
                                  MetricRegistry::standard());
  for (const auto& [name, result] : results) {
    CAPTURE(name);
    CHECK(result.value == 0.0);
    CHECK(result.flag == "empty_candidate");
  }
}

TEST_CASE("metric failures are isolated per cell") {
  // no references: reference-based metrics error, others still score
  auto inst = instance("s", "e", "a b c", {}, "a b c d");
  auto results = evaluate_example(
      inst, {"rouge_1", "length", "coverage"}, MetricRegistry::standard());
  CHECK(results.at("rouge_1").flag == "error");
  CHECK(results.at("length").flag.empty());
  CHECK(results.at("length").value == 3.0);
  CHECK(results.at("coverage").value == 1.0);
}

TEST_CASE("embedding metrics error out without a table") {
  auto inst = instance("s", "e", "a b", {"a b"}, "a b");
  auto results = evaluate_example(inst, {"rouge_we_1", "wms", "rouge_1"},
                                  MetricRegistry::standard());
  CHECK(results.at("rouge_we_1").flag == "error");
  CHECK(results.at("wms").flag == "error");
  CHECK(results.at("rouge_1").flag.empty());
}

TEST_CASE("evaluate_batch matches per-example evaluation") {
  auto instances = synthetic_batch(6);
  std::vector<std::string> metric_names = {"rouge_1", "rouge_l", "chrf",
                                           "meteor", "length", "novelty_2"};
  MetricRegistry reg = MetricRegistry::standard();
  ScoreTable table = evaluate_batch(instances, metric_names, reg, 1);
  for (const auto& inst : instances) {
    auto expected = evaluate_example(inst, metric_names, reg);
    for (const auto& [name, result] : expected) {
      const ScoreCell* cell = table.find(inst.system_id, inst.example_id, name);
      REQUIRE(cell != nullptr);
      CHECK(cell->value == result.value);
      CHECK(cell->flag == result.flag);
    }
  }
}

TEST_CASE("evaluate_batch output is invariant over worker count") {
  auto instances = synthetic_batch(40);
  auto metric_names = MetricRegistry::default_metrics(false);
  MetricRegistry reg = MetricRegistry::standard();
  ScoreTable one = evaluate_batch(instances, metric_names, reg, 1);
  ScoreTable four = evaluate_batch(instances, metric_names, reg, 4);
  ScoreTable eight = evaluate_batch(instances, metric_names, reg, 8);
  CHECK(one.to_tsv() == four.to_tsv());
  CHECK(one.to_tsv() == eight.to_tsv());
  CHECK(one.aggregates_to_tsv() == four.aggregates_to_tsv());
}

TEST_CASE("corpus-pooled bleu lands in the aggregates only") {
  auto instances = synthetic_batch(4);
  MetricRegistry reg = MetricRegistry::standard();
  ScoreTable table = evaluate_batch(instances, {"bleu", "length"}, reg, 1);
  for (const auto& inst : instances)
    CHECK(table.find(inst.system_id, inst.example_id, "bleu") == nullptr);
  auto aggregates = table.aggregates();
  CHECK(aggregates.count({"sysA", "bleu"}) == 1);
  CHECK(aggregates.count({"sysB", "bleu"}) == 1);
  // pooled value equals calling the corpus scorer directly
  std::vector<std::string> cands;
  std::vector<std::vector<std::string>> refs;
  for (const auto& inst : instances)
    if (inst.system_id == "sysA") {
      cands.push_back(inst.candidate);
      refs.push_back(inst.references);
    }
  CHECK(aggregates.at({"sysA", "bleu"}) == metrics::bleu_corpus(cands, refs));
}

TEST_CASE("cider in a batch uses the whole corpus for idf") {
  std::vector<corpus::EvaluationInstance> instances = {
      instance("sysA", "e1", "alpha beta gamma delta",
               {"alpha beta gamma delta"}, "src"),
      instance("sysA", "e2", "epsilon zeta eta theta",
               {"epsilon zeta eta theta"}, "src"),
  };
  MetricRegistry reg = MetricRegistry::standard();
  ScoreTable table = evaluate_batch(instances, {"cider"}, reg, 1);
  const ScoreCell* cell = table.find("sysA", "e1", "cider");
  REQUIRE(cell != nullptr);
  CHECK(cell->value == 10.0);
  CHECK(cell->flag.empty());
}

TEST_CASE("cider idf prepass dedupes examples across systems") {
  // the same two examples scored by two systems: idf must see 2 documents,
  // not 4, so self-similarity still scores a perfect 10
  std::vector<corpus::EvaluationInstance> instances = {
      instance("sysA", "e1", "alpha beta gamma delta",
               {"alpha beta gamma delta"}, "src"),
      instance("sysB", "e1", "beta alpha gamma delta",
               {"alpha beta gamma delta"}, "src"),
      instance("sysA", "e2", "epsilon zeta eta theta",
               {"epsilon zeta eta theta"}, "src"),
      instance("sysB", "e2", "theta eta zeta epsilon",
               {"epsilon zeta eta theta"}, "src"),
  };
  ScoreTable table =
      evaluate_batch(instances, {"cider"}, MetricRegistry::standard(), 2);
  CHECK(table.find("sysA", "e1", "cider")->value == 10.0);
  CHECK(table.find("sysA", "e2", "cider")->value == 10.0);
}

TEST_CASE("batch fingerprints cover every requested metric") {
  auto instances = synthetic_batch(2);
  std::vector<std::string> metric_names = {"rouge_1", "bleu", "cider"};
  ScoreTable table =
      evaluate_batch(instances, metric_names, MetricRegistry::standard(), 1);
  for (const auto& name : metric_names)
    CHECK(table.fingerprints().count(name) == 1);
}

TEST_CASE("aggregates skip error cells") {
  ScoreTable table;
  table.set("s", "e1", "m", 0.5);
  table.set("s", "e2", "m", 0.0, "error");
  table.set("s", "e3", "m", 0.7);
  auto agg = table.aggregates();
  CHECK(agg.at({"s", "m"}) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("score table tsv round-trip") {
  ScoreTable table;
  table.set("s", "e1", "m", 0.125);
  table.set("s", "e2", "m", 2.0 / 3.0, "empty_candidate");
  ScoreTable back = ScoreTable::from_tsv(table.to_tsv());
  CHECK(back.to_tsv() == table.to_tsv());
  const ScoreCell* cell = back.find("s", "e2", "m");
  REQUIRE(cell != nullptr);
  CHECK(cell->value == 2.0 / 3.0);  // shortest round-trip formatting
  CHECK(cell->flag == "empty_candidate");
}

TEST_CASE("external merges collide loudly") {
  ScoreTable table;
  table.set("s", "e1", "m", 0.5);
  corpus::ExternalScoreRecord rec{"m", "s", "e1", 0.9};
  CHECK_THROWS_AS(table.merge_external({rec}), InputError);
  corpus::ExternalScoreRecord fresh{"judge", "s", "e1", 0.9};
  table.merge_external({fresh});
  CHECK(table.find("s", "e1", "judge")->value == 0.9);
}
