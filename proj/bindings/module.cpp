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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "summetrics/analytics.hpp"
#include "summetrics/common.hpp"
#include "summetrics/corpus.hpp"
#include "summetrics/embedding.hpp"
#include "summetrics/engine.hpp"
#include "summetrics/extractive.hpp"
#include "summetrics/overlap.hpp"
#include "summetrics/text.hpp"

namespace py = pybind11;
using namespace summetrics;

namespace {

py::dict prf_dict(const metrics::PRF& prf) {
  py::dict out;
  out["precision"] = prf.precision;
  out["recall"] = prf.recall;
  out["f_score"] = prf.f_score;
  return out;
}

metrics::MultiRefPolicy policy_of(const std::string& name) {
  if (name == "max") return metrics::MultiRefPolicy::kMax;
  if (name == "mean") return metrics::MultiRefPolicy::kMean;
  throw ParameterError("multi_ref must be 'max' or 'mean', got '" + name + "'");
}

corpus::EvaluationInstance instance_of(const std::string& system_id,
                                       const std::string& example_id,
                                       const std::string& candidate,
                                       const std::vector<std::string>& references,
                                       const std::string& source) {
  corpus::EvaluationInstance inst;
  inst.system_id = system_id;
  inst.example_id = example_id;
  inst.candidate = candidate;
  inst.references = references;
  inst.source = source;
  return inst;
}

py::dict score_row(const std::map<std::string, engine::MetricResult>& results) {
  py::dict out;
  for (const auto& [name, result] : results) {
    py::dict cell;
    cell["value"] = result.value;
    cell["flag"] = result.flag;
    out[name.c_str()] = cell;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "summary evaluation metrics, statistics, and the scoring engine";

  py::register_exception<InputError>(m, "InputError");
  py::register_exception<ParameterError>(m, "ParameterError");

  m.attr("__version__") = kToolkitVersion;

  // text
  m.def(
      "tokenize",
      [](const std::string& text) { return text::tokenize(text).tokens; },
      py::arg("text"), "Lowercased word tokens.");
  m.def(
      "split_sentences",
      [](const std::string& text) {
        std::vector<std::vector<std::string>> out;
        for (const auto& sentence : text::split_sentences(text))
          out.push_back(sentence.tokens);
        return out;
      },
      py::arg("text"), "Token lists, one per sentence.");
  m.def("porter_stem",
        [](const std::string& token) { return text::porter_stem(token); },
        py::arg("token"));

  // lexical overlap
  m.def(
      "rouge_n",
      [](const std::string& candidate, const std::vector<std::string>& references,
         int n, bool use_stemmer, const std::string& multi_ref) {
        return prf_dict(metrics::rouge_n(candidate, references, n, use_stemmer,
                                         policy_of(multi_ref)));
      },
      py::arg("candidate"), py::arg("references"), py::arg("n") = 1,
      py::arg("use_stemmer") = false, py::arg("multi_ref") = "max");
  m.def(
      "rouge_l",
      [](const std::string& candidate, const std::vector<std::string>& references,
         const std::string& mode, const std::string& multi_ref) {
        metrics::RougeLMode rouge_mode;
        if (mode == "sentence")
          rouge_mode = metrics::RougeLMode::kSentence;
        else if (mode == "summary")
          rouge_mode = metrics::RougeLMode::kSummary;
        else
          throw ParameterError("mode must be 'sentence' or 'summary'");
        return prf_dict(metrics::rouge_l(candidate, references, rouge_mode,
                                         policy_of(multi_ref)));
      },
      py::arg("candidate"), py::arg("references"), py::arg("mode") = "sentence",
      py::arg("multi_ref") = "max");
  m.def(
      "bleu",
      [](const std::vector<std::string>& candidates,
         const std::vector<std::vector<std::string>>& references, int max_n,
         const std::string& smoothing) {
        metrics::BleuSmoothing mode;
        if (smoothing == "none")
          mode = metrics::BleuSmoothing::kNone;
        else if (smoothing == "add_one")
          mode = metrics::BleuSmoothing::kAddOne;
        else if (smoothing == "exp_decay")
          mode = metrics::BleuSmoothing::kExpDecay;
        else
          throw ParameterError("smoothing must be none, add_one, or exp_decay");
        return metrics::bleu_corpus(candidates, references, max_n, mode);
      },
      py::arg("candidates"), py::arg("references"), py::arg("max_n") = 4,
      py::arg("smoothing") = "add_one",
      "Corpus BLEU over parallel candidate/reference lists.");
  m.def(
      "chrf",
      [](const std::string& candidate, const std::vector<std::string>& references,
         int max_n, double beta) {
        return metrics::chrf(candidate, references, max_n, beta);
      },
      py::arg("candidate"), py::arg("references"), py::arg("max_n") = 6,
      py::arg("beta") = 2.0);
  m.def(
      "meteor",
      [](const std::string& candidate, const std::vector<std::string>& references,
         double alpha, double beta, double gamma) {
        return metrics::meteor(candidate, references, alpha, beta, gamma);
      },
      py::arg("candidate"), py::arg("references"), py::arg("alpha") = 0.9,
      py::arg("beta") = 3.0, py::arg("gamma") = 0.5);
  m.def(
      "cider",
      [](const std::vector<std::string>& candidates,
         const std::vector<std::vector<std::string>>& references, int max_n) {
        metrics::CiderResult result =
            metrics::cider(candidates, references, max_n);
        py::dict out;
        out["per_example"] = result.per_example;
        out["corpus_mean"] = result.corpus_mean;
        out["degenerate_corpus"] = result.degenerate_corpus;
        return out;
      },
      py::arg("candidates"), py::arg("references"), py::arg("max_n") = 4);

  // extractive statistics
  m.def(
      "coverage",
      [](const std::string& article, const std::string& summary) {
        return stats::coverage(stats::extractive_fragments_text(article, summary));
      },
      py::arg("article"), py::arg("summary"));
  m.def(
      "density",
      [](const std::string& article, const std::string& summary) {
        return stats::density(stats::extractive_fragments_text(article, summary));
      },
      py::arg("article"), py::arg("summary"));
  m.def(
      "compression",
      [](const std::string& article, const std::string& summary) {
        return stats::compression(text::tokenize(article).tokens,
                                  text::tokenize(summary).tokens);
      },
      py::arg("article"), py::arg("summary"));
  m.def(
      "novelty",
      [](const std::string& article, const std::string& summary, int n) {
        return stats::novelty(text::tokenize(article).tokens,
                              text::tokenize(summary).tokens, n);
      },
      py::arg("article"), py::arg("summary"), py::arg("n") = 1);
  m.def(
      "redundancy",
      [](const std::string& summary, int n) {
        return stats::redundancy(text::tokenize(summary).tokens, n);
      },
      py::arg("summary"), py::arg("n") = 1);

  // correlation and agreement
  m.def(
      "kendall_tau_b",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return analytics::kendall_tau_b(x, y);
      },
      py::arg("x"), py::arg("y"),
      "Tau-b with tie correction; None when either ranking is constant.");
  m.def(
      "pearson_r",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return analytics::pearson_r(x, y);
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "krippendorff_alpha",
      [](const std::vector<std::vector<double>>& units) {
        return analytics::krippendorff_alpha_interval(units);
      },
      py::arg("units"),
      "Interval-scale alpha over rating units; None when undefined.");

  // embeddings and transport
  py::class_<embedding::EmbeddingTable>(m, "EmbeddingTable")
      .def(py::init<int>(), py::arg("dimension"))
      .def_static("load", &embedding::EmbeddingTable::load, py::arg("path"))
      .def("insert", &embedding::EmbeddingTable::insert, py::arg("token"),
           py::arg("vector"))
      .def("dimension", &embedding::EmbeddingTable::dimension)
      .def("__len__", &embedding::EmbeddingTable::size)
      .def("__contains__", &embedding::EmbeddingTable::contains);
  m.def(
      "movers_distance",
      [](const std::vector<std::vector<double>>& a_vectors,
         const std::vector<double>& a_weights,
         const std::vector<std::vector<double>>& b_vectors,
         const std::vector<double>& b_weights, const std::string& metric) {
        if (a_vectors.size() != a_weights.size() ||
            b_vectors.size() != b_weights.size())
          throw ParameterError("vectors and weights must pair up");
        embedding::WeightedPointSet a, b;
        for (std::size_t i = 0; i < a_vectors.size(); ++i)
          a.points.push_back({a_vectors[i], a_weights[i]});
        for (std::size_t i = 0; i < b_vectors.size(); ++i)
          b.points.push_back({b_vectors[i], b_weights[i]});
        embedding::GroundMetric ground;
        if (metric == "euclidean")
          ground = embedding::GroundMetric::kEuclidean;
        else if (metric == "cosine")
          ground = embedding::GroundMetric::kCosineDistance;
        else
          throw ParameterError("metric must be 'euclidean' or 'cosine'");
        return embedding::movers_distance(a, b, ground);
      },
      py::arg("a_vectors"), py::arg("a_weights"), py::arg("b_vectors"),
      py::arg("b_weights"), py::arg("metric") = "euclidean",
      "Exact optimal-transport cost between weighted point sets.");
  m.def(
      "sentence_movers",
      [](const std::string& candidate, const std::string& other,
         const embedding::EmbeddingTable& table, const std::string& variant) {
        embedding::SmsVariant kind;
        if (variant == "wms")
          kind = embedding::SmsVariant::kWms;
        else if (variant == "sms")
          kind = embedding::SmsVariant::kSms;
        else if (variant == "swms")
          kind = embedding::SmsVariant::kSwms;
        else
          throw ParameterError("variant must be wms, sms, or swms");
        embedding::SmsResult result =
            embedding::sms_family(candidate, other, table, kind);
        py::dict out;
        out["similarity"] = result.similarity;
        out["all_oov"] = result.all_oov;
        return out;
      },
      py::arg("candidate"), py::arg("other"), py::arg("table"),
      py::arg("variant") = "swms");

  // engine
  m.def(
      "evaluate_example",
      [](const std::string& system_id, const std::string& example_id,
         const std::string& candidate, const std::vector<std::string>& references,
         const std::string& source, std::vector<std::string> metric_names,
         const std::string& multi_ref) {
        engine::MetricRegistry registry =
            engine::MetricRegistry::standard(policy_of(multi_ref));
        if (metric_names.empty())
          metric_names = engine::MetricRegistry::default_metrics(false);
        return score_row(engine::evaluate_example(
            instance_of(system_id, example_id, candidate, references, source),
            metric_names, registry));
      },
      py::arg("system_id"), py::arg("example_id"), py::arg("candidate"),
      py::arg("references"), py::arg("source") = "",
      py::arg("metrics") = std::vector<std::string>{},
      py::arg("multi_ref") = "max",
      "Every requested metric for one candidate; {name: {value, flag}}.");
  m.def(
      "evaluate_batch",
      [](const std::vector<py::dict>& instances,
         std::vector<std::string> metric_names, int parallelism,
         const std::string& multi_ref) {
        std::vector<corpus::EvaluationInstance> batch;
        for (const auto& row : instances)
          batch.push_back(instance_of(
              row["system_id"].cast<std::string>(),
              row["example_id"].cast<std::string>(),
              row["candidate"].cast<std::string>(),
              row["references"].cast<std::vector<std::string>>(),
              row.contains("source") ? row["source"].cast<std::string>() : ""));
        engine::MetricRegistry registry =
            engine::MetricRegistry::standard(policy_of(multi_ref));
        if (metric_names.empty())
          metric_names = engine::MetricRegistry::default_metrics(false);
        ScoreTable table =
            engine::evaluate_batch(batch, metric_names, registry, parallelism);
        return table.to_tsv();
      },
      py::arg("instances"), py::arg("metrics") = std::vector<std::string>{},
      py::arg("parallelism") = 1, py::arg("multi_ref") = "max",
      "Score a batch; returns the deterministic score table as TSV.");
}
