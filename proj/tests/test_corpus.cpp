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
#include <string>
#include <vector>

#include "doctest.h"
#include "summetrics/common.hpp"
#include "summetrics/corpus.hpp"
#include "temp_dir.hpp"

using namespace summetrics;
using namespace summetrics::corpus;
using testutil::TempDir;
using testutil::write_text;

namespace {

std::vector<SourceDocument> tiny_dataset() {
  return {
      {"ex1", "the cat sat on the mat today", {"the cat sat", "a cat sat"}},
      {"ex2", "the dog ran far away", {"the dog ran"}},
      {"ex3", "rain fell all night long", {"rain fell overnight"}},
  };
}

}  // namespace

TEST_CASE("dataset round-trips through jsonl") {
  TempDir dir("corpus");
  auto docs = tiny_dataset();
  save_dataset(dir.file("data.jsonl"), docs);
  auto loaded = load_dataset(dir.file("data.jsonl"));
  REQUIRE(loaded.size() == docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    CHECK(loaded[i].example_id == docs[i].example_id);
    CHECK(loaded[i].text == docs[i].text);
    CHECK(loaded[i].references == docs[i].references);
  }
}

TEST_CASE("dataset loader reports the offending line") {
  TempDir dir("corpus");
  SUBCASE("syntax error") {
    write_text(dir.file("bad.jsonl"),
               "{\"id\": \"a\", \"text\": \"t\", \"references\": [\"r\"]}\n"
               "not json\n");
    CHECK_THROWS_WITH_AS(load_dataset(dir.file("bad.jsonl")),
                         doctest::Contains("bad.jsonl:2"), InputError);
  }
  SUBCASE("missing field") {
    write_text(dir.file("bad.jsonl"), "{\"id\": \"a\", \"text\": \"t\"}\n");
    CHECK_THROWS_AS(load_dataset(dir.file("bad.jsonl")), InputError);
  }
  SUBCASE("empty reference list") {
    write_text(dir.file("bad.jsonl"),
               "{\"id\": \"a\", \"text\": \"t\", \"references\": []}\n");
    CHECK_THROWS_AS(load_dataset(dir.file("bad.jsonl")), InputError);
  }
  SUBCASE("whitespace-only reference") {
    write_text(dir.file("bad.jsonl"),
               "{\"id\": \"a\", \"text\": \"t\", \"references\": [\"  \"]}\n");
    CHECK_THROWS_AS(load_dataset(dir.file("bad.jsonl")), InputError);
  }
}

TEST_CASE("duplicate example ids name both lines") {
  TempDir dir("corpus");
  write_text(dir.file("dup.jsonl"),
             "{\"id\": \"a\", \"text\": \"t\", \"references\": [\"r\"]}\n"
             "{\"id\": \"b\", \"text\": \"t\", \"references\": [\"r\"]}\n"
             "{\"id\": \"a\", \"text\": \"t2\", \"references\": [\"r2\"]}\n");
  try {
    load_dataset(dir.file("dup.jsonl"));
    FAIL("expected InputError");
  } catch (const InputError& e) {
    std::string msg = e.what();
    CHECK(msg.find("lines 1 and 3") != std::string::npos);
    CHECK(msg.find("'a'") != std::string::npos);
  }
}

TEST_CASE("blank lines are skipped") {
  TempDir dir("corpus");
  write_text(dir.file("gaps.jsonl"),
             "\n{\"id\": \"a\", \"text\": \"t\", \"references\": [\"r\"]}\n\n");
  CHECK(load_dataset(dir.file("gaps.jsonl")).size() == 1);
}

TEST_CASE("outputs round-trip with optional fields") {
  TempDir dir("corpus");
  std::vector<SystemOutput> outs = {
      {"sysA", std::string("ex1"), "summary one", std::nullopt},
      {"sysA", std::nullopt, "summary two", std::string("the dog ran")},
  };
  save_outputs(dir.file("outs.jsonl"), outs);
  auto loaded = load_outputs(dir.file("outs.jsonl"));
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].example_id == std::string("ex1"));
  CHECK_FALSE(loaded[0].reference.has_value());
  CHECK_FALSE(loaded[1].example_id.has_value());
  CHECK(loaded[1].reference == std::string("the dog ran"));
}

TEST_CASE("annotation loader validates the rating scale") {
  TempDir dir("corpus");
  auto record = [](const std::string& coherence) {
    return "{\"system_id\": \"s\", \"id\": \"e\", \"annotator_id\": \"a1\", "
           "\"class\": \"expert\", \"round\": 1, \"coherence\": " +
           coherence +
           ", \"consistency\": 5, \"fluency\": 3, \"relevance\": 1}\n";
  };
  write_text(dir.file("ok.jsonl"), record("2"));
  auto anns = load_annotations(dir.file("ok.jsonl"));
  REQUIRE(anns.size() == 1);
  CHECK(anns[0].coherence == 2);
  CHECK(anns[0].dimension("consistency") == 5);
  CHECK_THROWS_AS(anns[0].dimension("sparkle"), ParameterError);

  for (const char* bad : {"0", "6", "2.5", "\"3\""}) {
    write_text(dir.file("bad.jsonl"), record(bad));
    CAPTURE(bad);
    CHECK_THROWS_AS(load_annotations(dir.file("bad.jsonl")), InputError);
  }
}

TEST_CASE("annotation loader rejects bad class, round, and duplicates") {
  TempDir dir("corpus");
  std::string base =
      "{\"system_id\": \"s\", \"id\": \"e\", \"annotator_id\": \"a1\", "
      "\"class\": \"expert\", \"round\": 1, \"coherence\": 2, "
      "\"consistency\": 2, \"fluency\": 2, \"relevance\": 2}\n";
  SUBCASE("unknown class") {
    write_text(dir.file("a.jsonl"),
               "{\"system_id\": \"s\", \"id\": \"e\", \"annotator_id\": "
               "\"a1\", \"class\": \"intern\", \"round\": 1, \"coherence\": 2, "
               "\"consistency\": 2, \"fluency\": 2, \"relevance\": 2}\n");
    CHECK_THROWS_AS(load_annotations(dir.file("a.jsonl")), InputError);
  }
  SUBCASE("round must be positive") {
    write_text(dir.file("a.jsonl"),
               "{\"system_id\": \"s\", \"id\": \"e\", \"annotator_id\": "
               "\"a1\", \"class\": \"crowd\", \"round\": 0, \"coherence\": 2, "
               "\"consistency\": 2, \"fluency\": 2, \"relevance\": 2}\n");
    CHECK_THROWS_AS(load_annotations(dir.file("a.jsonl")), InputError);
  }
  SUBCASE("exact duplicate rater slot") {
    write_text(dir.file("a.jsonl"), base + base);
    CHECK_THROWS_AS(load_annotations(dir.file("a.jsonl")), InputError);
  }
  SUBCASE("same annotator, different round is fine") {
    std::string round2 = base;
    auto pos = round2.find("\"round\": 1");
    round2.replace(pos, 10, "\"round\": 2");
    write_text(dir.file("a.jsonl"), base + round2);
    CHECK(load_annotations(dir.file("a.jsonl")).size() == 2);
  }
}

TEST_CASE("external scores load and reject non-finite values") {
  TempDir dir("corpus");
  write_text(dir.file("ext.jsonl"),
             "{\"metric\": \"judge\", \"system_id\": \"s\", \"id\": \"e\", "
             "\"value\": 0.5}\n");
  auto recs = load_external_scores(dir.file("ext.jsonl"));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].value == 0.5);
  write_text(dir.file("nan.jsonl"),
             "{\"metric\": \"judge\", \"system_id\": \"s\", \"id\": \"e\", "
             "\"value\": 1e999}\n");
  CHECK_THROWS_AS(load_external_scores(dir.file("nan.jsonl")), InputError);
}

TEST_CASE("normalize_for_match folds case and whitespace") {
  CHECK(normalize_for_match("  The \t CAT\n sat ") == "the cat sat");
  CHECK(normalize_for_match("") == "");
  CHECK(normalize_for_match("   ") == "");
}

TEST_CASE("alignment joins by id when present") {
  auto docs = tiny_dataset();
  std::vector<SystemOutput> outs = {
      {"sysA", std::string("ex2"), "a summary", std::nullopt},
      {"sysA", std::string("nope"), "lost", std::nullopt},
  };
  auto result = align_outputs(outs, docs);
  REQUIRE(result.instances.size() == 1);
  const auto& inst = result.instances[0];
  CHECK(inst.system_id == "sysA");
  CHECK(inst.example_id == "ex2");
  CHECK(inst.candidate == "a summary");
  CHECK(inst.source == "the dog ran far away");
  CHECK(inst.references == std::vector<std::string>{"the dog ran"});
  REQUIRE(result.unmatched.size() == 1);
  CHECK(result.unmatched[0].reason == "unknown_id");
}

TEST_CASE("alignment falls back to normalized reference text") {
  auto docs = tiny_dataset();
  std::vector<SystemOutput> outs = {
      // matches ex2's reference up to case and spacing
      {"sysB", std::nullopt, "a summary", std::string("The  DOG ran")},
      {"sysB", std::nullopt, "another", std::string("no such reference")},
      {"sysB", std::nullopt, "keyless", std::nullopt},
  };
  auto result = align_outputs(outs, docs);
  REQUIRE(result.instances.size() == 1);
  CHECK(result.instances[0].example_id == "ex2");
  REQUIRE(result.unmatched.size() == 2);
  CHECK(result.unmatched[0].reason == "no_match");
  CHECK(result.unmatched[1].reason == "no_key");
}

TEST_CASE("reference text shared by two documents is ambiguous") {
  std::vector<SourceDocument> docs = {
      {"ex1", "text one", {"shared reference"}},
      {"ex2", "text two", {"shared reference"}},
  };
  std::vector<SystemOutput> outs = {
      {"sysA", std::nullopt, "summary", std::string("shared  Reference")},
  };
  auto result = align_outputs(outs, docs);
  CHECK(result.instances.empty());
  REQUIRE(result.unmatched.size() == 1);
  CHECK(result.unmatched[0].reason == "ambiguous");
}

TEST_CASE("duplicate first references are grouped in dataset order") {
  std::vector<SourceDocument> docs = {
      {"e1", "t", {"alpha summary"}},  {"e2", "t", {"beta summary"}},
      {"e3", "t", {"Alpha  summary"}}, {"e4", "t", {"gamma summary"}},
      {"e5", "t", {"beta summary"}},   {"e6", "t", {"alpha summary"}},
  };
  auto groups = detect_duplicate_references(docs);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == std::vector<std::string>{"e1", "e3", "e6"});
  CHECK(groups[1] == std::vector<std::string>{"e2", "e5"});

  // only the first reference participates
  std::vector<SourceDocument> docs2 = {
      {"e1", "t", {"one", "shared"}},
      {"e2", "t", {"two", "shared"}},
  };
  CHECK(detect_duplicate_references(docs2).empty());
}

TEST_CASE("annotation_counts_by_class") {
  std::vector<HumanAnnotation> anns;
  HumanAnnotation a;
  a.system_id = "s";
  a.example_id = "e";
  a.coherence = a.consistency = a.fluency = a.relevance = 3;
  a.annotator_id = "x";
  a.annotator_class = "expert";
  anns.push_back(a);
  a.annotator_class = "crowd";
  anns.push_back(a);
  anns.push_back(a);
  auto counts = annotation_counts_by_class(anns);
  CHECK(counts.at("expert") == 1);
  CHECK(counts.at("crowd") == 2);
}
