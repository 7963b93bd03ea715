// Copyright 2026 The tgm-eval Authors
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

#include <doctest.h>

#include <fstream>

#include "support/temp_dir.hpp"
#include "tgmeval/corpus.hpp"
#include "tgmeval/errors.hpp"
#include "tgmeval/sparql/parser.hpp"
#include "tgmeval/sparql/serialize.hpp"

using namespace tgmeval;
using namespace tgmeval::corpus;

namespace {

DatasetDescriptor descriptor(const std::string& name, int order,
                             std::filesystem::path path,
                             DatasetFormat format = DatasetFormat::QaldJson) {
    DatasetDescriptor d;
    d.name = name;
    d.family = format == DatasetFormat::QaldJson ? DatasetFamily::Qald
                                                 : DatasetFamily::LcQuad;
    d.order_index = order;
    d.path = std::move(path);
    d.format = format;
    return d;
}

RawEntry entry(const std::string& dataset, int order, const std::string& id,
               const std::string& nl, const std::string& gold) {
    RawEntry e;
    e.source = descriptor(dataset, order, "");
    e.question_id = id;
    e.language = "en";
    e.nl_text = nl;
    e.gold_text = gold;
    return e;
}

void write(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_SUITE_BEGIN("corpus");

TEST_CASE("load_qald keeps english strings and skips missing sparql") {
    testsupport::TempDir dir("qald-load");
    write(dir.file("d.json"), R"({"questions": [
      {"id": 1,
       "question": [{"language": "en", "string": "Q one?"},
                    {"language": "de", "string": "Frage eins?"}],
       "query": {"sparql": "SELECT ?x WHERE { ?x ?p ?o }"}},
      {"id": 2,
       "question": [{"language": "en", "string": "Q two?"}]},
      {"id": "3",
       "question": [{"language": "fr", "string": "Question trois?"}],
       "query": {"sparql": "SELECT ?x WHERE { ?x ?p ?o }"}}
    ]})");
    auto result = load_qald(descriptor("qald-1/test", 1, dir.file("d.json")));
    REQUIRE(result.entries.size() == 1);
    CHECK(result.entries[0].language == "en");
    CHECK(result.entries[0].nl_text == "Q one?");
    REQUIRE(result.skipped.size() == 1);
    CHECK(result.skipped[0].reason == "missing-sparql");
    CHECK(result.skipped[0].question_id == "2");
}

TEST_CASE("load_qald refuses excluded datasets and reports schema errors") {
    testsupport::TempDir dir("qald-errors");
    SUBCASE("excluded by policy") {
        DatasetDescriptor d = descriptor("qald-4/hybrid", 4, dir.file("h.json"));
        d.excluded = true;
        d.exclusion_reason = "pseudo queries";
        CHECK_THROWS_AS(load_qald(d), InputError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(
            load_qald(descriptor("qald-1/x", 1, dir.file("absent.json"))),
            InputError);
    }
    SUBCASE("schema mismatch names the offending path") {
        write(dir.file("bad.json"), R"({"questions": [{"noid": true}]})");
        try {
            load_qald(descriptor("qald-1/bad", 1, dir.file("bad.json")));
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("questions[0]") !=
                  std::string::npos);
        }
    }
    SUBCASE("empty questions array loads nothing") {
        write(dir.file("empty.json"), R"({"questions": []})");
        auto result =
            load_qald(descriptor("qald-1/empty", 1, dir.file("empty.json")));
        CHECK(result.entries.empty());
        CHECK(result.skipped.empty());
    }
}

TEST_CASE("load_lcquad maps items and fixes the language") {
    testsupport::TempDir dir("lcquad-load");
    write(dir.file("l.json"), R"([
      {"_id": "101", "corrected_question": "Who wrote it?",
       "sparql_query": "SELECT ?x WHERE { ?x ?p ?o }"},
      {"_id": 102, "corrected_question": "",
       "sparql_query": "SELECT ?x WHERE { ?x ?p ?o }"}
    ])");
    auto result = load_lcquad(descriptor("lc-quad/train", 1, dir.file("l.json"),
                                         DatasetFormat::LcQuadJson));
    REQUIRE(result.entries.size() == 1);
    CHECK(result.entries[0].language == "en");
    CHECK(result.entries[0].question_id == "101");
    REQUIRE(result.skipped.size() == 1);
    CHECK(result.skipped[0].reason == "missing-question");
}

TEST_CASE("dedup key folds case, whitespace and trailing punctuation") {
    CHECK(dedup_key("What is the capital of Japan?") ==
          dedup_key("  what IS the\tcapital of  japan ?"));
    CHECK(dedup_key("Name a river.") == dedup_key("name a River"));
    CHECK(dedup_key("Alpha") != dedup_key("Alphabet"));
}

TEST_CASE("build_corpus keeps the newest duplicate") {
    auto rules = normalize::default_rules();
    std::vector<RawEntry> entries = {
        entry("qald-3/a", 3, "9", "What is X?",
              "SELECT ?old WHERE { ?old ?p ?o }"),
        entry("qald-5/a", 5, "4", "what is x",
              "SELECT ?new WHERE { ?new ?p ?o }"),
    };
    auto [questions, stats] = build_corpus(entries, rules);
    REQUIRE(questions.size() == 1);
    CHECK(questions[0].uid == "qald-5/a#4");
    CHECK(questions[0].gold_text.find("?new") != std::string::npos);
    CHECK(stats.total == 1);
}

TEST_CASE("build_corpus is independent of entry arrival order") {
    auto rules = normalize::default_rules();
    std::vector<RawEntry> forward = {
        entry("qald-1/a", 1, "1", "Q1?", "ASK WHERE { ?a ?b ?c }"),
        entry("qald-2/a", 2, "2", "q1", "ASK WHERE { ?d ?e ?f }"),
        entry("qald-2/a", 2, "3", "Other?", "SELECT ?x WHERE { ?x ?y ?z }"),
    };
    std::vector<RawEntry> backward(forward.rbegin(), forward.rend());
    auto [q1, s1] = build_corpus(forward, rules);
    auto [q2, s2] = build_corpus(backward, rules);
    REQUIRE(q1.size() == q2.size());
    for (std::size_t i = 0; i < q1.size(); ++i) {
        CHECK(q1[i].uid == q2[i].uid);
        CHECK(q1[i].gold_text == q2[i].gold_text);
    }
}

TEST_CASE("build_corpus records gold parse failures as skipped") {
    auto rules = normalize::default_rules();
    std::vector<RawEntry> entries = {
        entry("qald-1/a", 1, "1", "Fine?", "ASK WHERE { ?a ?b ?c }"),
        entry("qald-1/a", 1, "2", "Broken?", "SELECT ?x WHERE { ?x ?p }"),
    };
    auto [questions, stats] = build_corpus(entries, rules);
    CHECK(questions.size() == 1);
    REQUIRE(stats.skipped.size() == 1);
    CHECK(stats.skipped[0].reason == "gold-parse-failure");
    CHECK(stats.skipped[0].question_id == "2");
}

TEST_CASE("dedup is idempotent over its own output") {
    auto rules = normalize::default_rules();
    std::vector<RawEntry> entries = {
        entry("qald-1/a", 1, "1", "One?", "ASK WHERE { ?a ?b ?c }"),
        entry("qald-2/a", 2, "1", "one", "ASK WHERE { ?a ?b ?c }"),
        entry("qald-2/a", 2, "2", "Two?", "SELECT ?x WHERE { ?x ?y ?z }"),
    };
    auto [questions, stats] = build_corpus(entries, rules);
    std::vector<RawEntry> again;
    for (const auto& q : questions) {
        RawEntry e;
        e.source = q.provenance;
        e.question_id = q.uid.substr(q.uid.find('#') + 1);
        e.language = "en";
        e.nl_text = q.nl_text;
        e.gold_text = q.gold_text;
        again.push_back(std::move(e));
    }
    auto [questions2, stats2] = build_corpus(again, rules);
    REQUIRE(questions2.size() == questions.size());
    for (std::size_t i = 0; i < questions.size(); ++i) {
        CHECK(questions2[i].uid == questions[i].uid);
        CHECK(questions2[i].gold_text == questions[i].gold_text);
    }
}

TEST_CASE("classify") {
    auto rules = normalize::default_rules();
    auto klass_of = [&](const std::string& text) {
        auto parsed = sparql::parse_query(text);
        REQUIRE(sparql::parse_ok(parsed));
        return classify(sparql::parsed_ast(parsed));
    };
    CHECK(klass_of("ASK WHERE { ?a ?b ?c }").kind ==
          QuestionClass::Kind::YesNo);
    CHECK(klass_of("SELECT ?x WHERE { ?x ?y ?z }").kind ==
          QuestionClass::Kind::Factoid);
    auto ranged = klass_of("SELECT ?x WHERE { ?x ?y ?z } LIMIT 1 OFFSET 1");
    CHECK(ranged.kind == QuestionClass::Kind::RangeFactoid);
    CHECK(ranged.range->length == 1);
    CHECK(ranged.range->start == 2);
    // a limit on an ask query means nothing for classification
    CHECK(klass_of("ASK WHERE { ?a ?b ?c } LIMIT 1").kind ==
          QuestionClass::Kind::YesNo);
    (void)rules;
}

TEST_CASE("corpus stats and conservation") {
    auto rules = normalize::default_rules();
    std::vector<RawEntry> entries = {
        entry("qald-1/a", 1, "1", "A?", "ASK WHERE { ?a ?b ?c }"),
        entry("qald-1/a", 1, "2", "B?", "SELECT ?x WHERE { ?x ?y ?z }"),
        entry("qald-1/a", 1, "3", "C?",
              "SELECT ?x WHERE { ?x ?y ?z } LIMIT 2"),
    };
    auto [questions, stats] = build_corpus(entries, rules);
    CHECK(stats.total == 3);
    CHECK(stats.yes_no == 1);
    CHECK(stats.factoid == 2);
    CHECK(stats.range_specified == 1);
    CHECK(stats.yes_no + stats.factoid == stats.total);
    CHECK(stats.range_specified <= stats.factoid);
    CHECK(corpus_stats({}).total == 0);
}

TEST_CASE("every question round-trips and the corpus file reloads") {
    testsupport::TempDir dir("corpus-io");
    auto rules = normalize::default_rules();
    std::vector<RawEntry> entries = {
        entry("qald-1/a", 1, "1", "A?",
              "SELECT COUNT(?x) WHERE { ?x ?y ?z }"),
        entry("qald-1/a", 1, "2", "B?",
              "PREFIX dbo: <http://dbpedia.org/ontology/> ASK WHERE "
              "{ res:Q dbo:p ?x }"),
    };
    auto [questions, stats] = build_corpus(entries, rules);
    REQUIRE(questions.size() == 2);
    for (const auto& q : questions) {
        auto reparsed = sparql::parse_query(sparql::serialize(q.gold_ast));
        REQUIRE(sparql::parse_ok(reparsed));
        CHECK(sparql::parsed_ast(reparsed) == q.gold_ast);
    }
    write_corpus(dir.file("corpus.jsonl"), questions);
    auto reloaded = read_corpus(dir.file("corpus.jsonl"));
    REQUIRE(reloaded.size() == questions.size());
    for (std::size_t i = 0; i < questions.size(); ++i) {
        CHECK(reloaded[i].uid == questions[i].uid);
        CHECK(reloaded[i].gold_ast == questions[i].gold_ast);
        CHECK(reloaded[i].klass == questions[i].klass);
    }
}

TEST_SUITE_END();
