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

#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "summetrics/common.hpp"
#include "summetrics/corpus.hpp"

namespace summetrics::corpus {
namespace {

using nlohmann::json;

json parse_line(const std::string& line, const std::string& path,
                std::size_t lineno) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw InputError(path + ":" + std::to_string(lineno) +
                     ": malformed record");
  return j;
}

std::string require_string(const json& j, const char* key,
                           const std::string& path, std::size_t lineno) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    throw InputError(path + ":" + std::to_string(lineno) +
                     ": missing or non-string field '" + key + "'");
  return it->get<std::string>();
}

int require_score(const json& j, const char* key, const std::string& path,
                  std::size_t lineno) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number())
    throw InputError(path + ":" + std::to_string(lineno) +
                     ": missing or non-numeric field '" + key + "'");
  double v = it->get<double>();
  int iv = static_cast<int>(std::lround(v));
  if (v != static_cast<double>(iv) || iv < 1 || iv > 5)
    throw InputError(path + ":" + std::to_string(lineno) + ": field '" + key +
                     "' must be an integer in [1,5]");
  return iv;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  return out;
}

bool all_whitespace(const std::string& s) {
  for (unsigned char c : s)
    if (!std::isspace(c)) return false;
  return true;
}

}  // namespace

int HumanAnnotation::dimension(const std::string& name) const {
  if (name == "coherence") return coherence;
  if (name == "consistency") return consistency;
  if (name == "fluency") return fluency;
  if (name == "relevance") return relevance;
  throw ParameterError("unknown annotation dimension '" + name + "'");
}

std::vector<SourceDocument> load_dataset(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<SourceDocument> docs;
  std::map<std::string, std::size_t> first_line;  // id -> line number
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, path, lineno);
    SourceDocument doc;
    doc.example_id = require_string(j, "id", path, lineno);
    doc.text = require_string(j, "text", path, lineno);
    auto refs = j.find("references");
    if (refs == j.end() || !refs->is_array() || refs->empty())
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": missing or empty 'references' array");
    for (const auto& r : *refs) {
      if (!r.is_string() || all_whitespace(r.get<std::string>()))
        throw InputError(path + ":" + std::to_string(lineno) +
                         ": references must be non-empty strings");
      doc.references.push_back(r.get<std::string>());
    }
    if (doc.example_id.empty())
      throw InputError(path + ":" + std::to_string(lineno) + ": empty id");
    auto [it, inserted] = first_line.emplace(doc.example_id, lineno);
    if (!inserted)
      throw InputError(path + ": duplicate example id '" + doc.example_id +
                       "' on lines " + std::to_string(it->second) + " and " +
                       std::to_string(lineno));
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<SystemOutput> load_outputs(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<SystemOutput> outs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, path, lineno);
    SystemOutput out;
    out.system_id = require_string(j, "system_id", path, lineno);
    out.summary_text = require_string(j, "decoded", path, lineno);
    if (auto it = j.find("id"); it != j.end() && it->is_string())
      out.example_id = it->get<std::string>();
    if (auto it = j.find("reference"); it != j.end() && it->is_string())
      out.reference = it->get<std::string>();
    if (out.system_id.empty())
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": empty system_id");
    outs.push_back(std::move(out));
  }
  return outs;
}

std::vector<HumanAnnotation> load_annotations(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<HumanAnnotation> anns;
  std::set<std::array<std::string, 4>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, path, lineno);
    HumanAnnotation a;
    a.system_id = require_string(j, "system_id", path, lineno);
    a.example_id = require_string(j, "id", path, lineno);
    a.annotator_id = require_string(j, "annotator_id", path, lineno);
    a.annotator_class = require_string(j, "class", path, lineno);
    if (a.annotator_class != "expert" && a.annotator_class != "crowd")
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": unknown annotator class '" + a.annotator_class +
                       "'");
    auto rit = j.find("round");
    if (rit == j.end() || !rit->is_number_integer() || rit->get<int>() < 1)
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": 'round' must be a positive integer");
    a.round = rit->get<int>();
    a.coherence = require_score(j, "coherence", path, lineno);
    a.consistency = require_score(j, "consistency", path, lineno);
    a.fluency = require_score(j, "fluency", path, lineno);
    a.relevance = require_score(j, "relevance", path, lineno);
    std::array<std::string, 4> key = {a.annotator_id, a.system_id,
                                      a.example_id,
                                      std::to_string(a.round)};
    if (!seen.insert(key).second)
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": duplicate annotation for annotator '" +
                       a.annotator_id + "' on (" + a.system_id + ", " +
                       a.example_id + ", round " + std::to_string(a.round) +
                       ")");
    anns.push_back(std::move(a));
  }
  return anns;
}

std::vector<ExternalScoreRecord> load_external_scores(
    const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<ExternalScoreRecord> recs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, path, lineno);
    ExternalScoreRecord r;
    r.metric_name = require_string(j, "metric", path, lineno);
    r.system_id = require_string(j, "system_id", path, lineno);
    r.example_id = require_string(j, "id", path, lineno);
    auto vit = j.find("value");
    if (vit == j.end() || !vit->is_number())
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": missing or non-numeric 'value'");
    r.value = vit->get<double>();
    if (!std::isfinite(r.value))
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": non-finite value");
    if (r.metric_name.empty())
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": empty metric name");
    recs.push_back(std::move(r));
  }
  return recs;
}

void save_dataset(const std::string& path,
                  const std::vector<SourceDocument>& docs) {
  std::ofstream out = open_output(path);
  for (const auto& d : docs) {
    json j;
    j["id"] = d.example_id;
    j["text"] = d.text;
    j["references"] = d.references;
    out << j.dump() << "\n";
  }
}

void save_outputs(const std::string& path,
                  const std::vector<SystemOutput>& outs) {
  std::ofstream out = open_output(path);
  for (const auto& o : outs) {
    json j;
    j["system_id"] = o.system_id;
    if (o.example_id) j["id"] = *o.example_id;
    j["decoded"] = o.summary_text;
    if (o.reference) j["reference"] = *o.reference;
    out << j.dump() << "\n";
  }
}

void save_annotations(const std::string& path,
                      const std::vector<HumanAnnotation>& anns) {
  std::ofstream out = open_output(path);
  for (const auto& a : anns) {
    json j;
    j["system_id"] = a.system_id;
    j["id"] = a.example_id;
    j["annotator_id"] = a.annotator_id;
    j["class"] = a.annotator_class;
    j["round"] = a.round;
    j["coherence"] = a.coherence;
    j["consistency"] = a.consistency;
    j["fluency"] = a.fluency;
    j["relevance"] = a.relevance;
    out << j.dump() << "\n";
  }
}

void save_external_scores(const std::string& path,
                          const std::vector<ExternalScoreRecord>& recs) {
  std::ofstream out = open_output(path);
  for (const auto& r : recs) {
    json j;
    j["metric"] = r.metric_name;
    j["system_id"] = r.system_id;
    j["id"] = r.example_id;
    j["value"] = r.value;
    out << j.dump() << "\n";
  }
}

std::string normalize_for_match(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

AlignmentResult align_outputs(const std::vector<SystemOutput>& outputs,
                              const std::vector<SourceDocument>& docs) {
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < docs.size(); ++i)
    by_id.emplace(docs[i].example_id, i);
  // normalized reference text -> indices of documents holding it
  std::map<std::string, std::vector<std::size_t>> by_ref;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::set<std::string> local;  // a doc counts once per distinct text
    for (const auto& r : docs[i].references)
      local.insert(normalize_for_match(r));
    for (const auto& key : local) by_ref[key].push_back(i);
  }

  AlignmentResult result;
  for (const auto& out : outputs) {
    std::size_t doc_index = docs.size();
    std::string reason;
    if (out.example_id) {
      auto it = by_id.find(*out.example_id);
      if (it == by_id.end())
        reason = "unknown_id";
      else
        doc_index = it->second;
    } else if (out.reference) {
      auto it = by_ref.find(normalize_for_match(*out.reference));
      if (it == by_ref.end())
        reason = "no_match";
      else if (it->second.size() > 1)
        reason = "ambiguous";
      else
        doc_index = it->second.front();
    } else {
      reason = "no_key";
    }
    if (doc_index == docs.size()) {
      result.unmatched.push_back({out, reason});
      continue;
    }
    const SourceDocument& doc = docs[doc_index];
    EvaluationInstance inst;
    inst.system_id = out.system_id;
    inst.example_id = doc.example_id;
    inst.candidate = out.summary_text;
    inst.references = doc.references;
    inst.source = doc.text;
    result.instances.push_back(std::move(inst));
  }
  return result;
}

std::vector<std::vector<std::string>> detect_duplicate_references(
    const std::vector<SourceDocument>& docs) {
  std::map<std::string, std::vector<std::string>> groups;
  std::vector<std::string> order;  // normalized keys by first occurrence
  for (const auto& d : docs) {
    if (d.references.empty()) continue;
    std::string key = normalize_for_match(d.references.front());
    auto [it, inserted] = groups.emplace(key, std::vector<std::string>{});
    if (inserted) order.push_back(key);
    it->second.push_back(d.example_id);
  }
  std::vector<std::vector<std::string>> result;
  for (const auto& key : order)
    if (groups[key].size() >= 2) result.push_back(groups[key]);
  return result;
}

std::map<std::string, int> annotation_counts_by_class(
    const std::vector<HumanAnnotation>& anns) {
  std::map<std::string, int> counts;
  for (const auto& a : anns) ++counts[a.annotator_class];
  return counts;
}

}  // namespace summetrics::corpus
