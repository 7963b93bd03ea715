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

#include "tgmeval/criteria.hpp"
#include "tgmeval/errors.hpp"
#include "tgmeval/mockstub.hpp"
#include "tgmeval/sparql/analysis.hpp"
#include "tgmeval/sparql/parser.hpp"

using namespace tgmeval;
using namespace tgmeval::mock;
using sparql::QueryAst;

namespace {

QueryAst parse(const std::string& text) {
    auto result = sparql::parse_query(text);
    REQUIRE(sparql::parse_ok(result));
    return sparql::parsed_ast(result);
}

}  // namespace

TEST_SUITE_BEGIN("mockstub");

TEST_CASE("apply_mutation produces the intended single defect") {
    QueryAst echo = parse(echo_select_text());

    SUBCASE("flip form select -> ask") {
        QueryAst flipped = parse(apply_mutation(echo, Mutation::FlipForm));
        CHECK(flipped.form == sparql::QueryForm::Ask);
    }
    SUBCASE("flip form ask -> select projects a fresh variable") {
        QueryAst ask = parse("ASK WHERE { ?v1 ?v2 ?v3 }");
        QueryAst flipped = parse(apply_mutation(ask, Mutation::FlipForm));
        CHECK(flipped.form == sparql::QueryForm::Select);
        // by construction the fresh target is a disconnected target
        CHECK(criteria::check_disconnected_target(flipped).has_value());
    }
    SUBCASE("drop range strips limit and offset") {
        QueryAst ranged =
            parse("SELECT ?v1 WHERE { ?v1 ?v2 ?v3 } LIMIT 1 OFFSET 1");
        QueryAst dropped = parse(apply_mutation(ranged, Mutation::DropRange));
        CHECK(!dropped.modifiers.limit.has_value());
        CHECK(!dropped.modifiers.offset.has_value());
        CHECK(!sparql::range_of(dropped).has_value());
    }
    SUBCASE("drop range without a range is inapplicable") {
        CHECK_THROWS_AS(apply_mutation(echo, Mutation::DropRange), InputError);
        QueryAst ask = parse("ASK WHERE { ?v1 ?v2 ?v3 }");
        CHECK_THROWS_AS(apply_mutation(ask, Mutation::DropRange), InputError);
    }
    SUBCASE("add disconnected target appends an unused projection variable") {
        QueryAst mutated =
            parse(apply_mutation(echo, Mutation::AddDisconnectedTarget));
        auto finding = criteria::check_disconnected_target(mutated);
        REQUIRE(finding.has_value());
        CHECK(!criteria::check_disconnected_triple(mutated).has_value());
    }
    SUBCASE("add disconnected triple appends three fresh variables") {
        QueryAst mutated =
            parse(apply_mutation(echo, Mutation::AddDisconnectedTriple));
        CHECK(sparql::triple_patterns(mutated).size() == 2);
        CHECK(!criteria::check_disconnected_target(mutated).has_value());
        auto finding = criteria::check_disconnected_triple(mutated);
        REQUIRE(finding.has_value());
        CHECK(finding->detail["triples"] == nlohmann::json::array({1}));
    }
    SUBCASE("break syntax always fails the parser") {
        std::string broken = apply_mutation(echo, Mutation::BreakSyntax);
        CHECK(!sparql::parse_ok(sparql::parse_query(broken)));
    }
}

TEST_CASE("echo-select templates evaluate good against range-free selects") {
    const char* golds[] = {
        "SELECT ?x WHERE { ?x ?y ?z }",
        "SELECT DISTINCT ?a ?b WHERE { ?a ?p ?b . OPTIONAL { ?b ?q ?c } }",
        "SELECT (COUNT(?x) AS ?n) WHERE { ?x ?y ?z }",
    };
    for (const char* gold_text : golds) {
        CAPTURE(gold_text);
        tgm::TgmOutcome outcome{std::vector<tgm::TemplateCandidate>{
            tgm::TemplateCandidate{echo_select_text(),
                                   nlohmann::json::array(), std::nullopt}}};
        auto verdict = criteria::evaluate_one(
            "q", parse(gold_text), outcome, sparql::PrefixEnv::default_env());
        CHECK(verdict.good);
    }
}

TEST_CASE("script json parsing and validation") {
    auto script = BehaviorScript::from_json(nlohmann::json::parse(R"({
        "default": {"kind": "echo-select"},
        "delay_ms": 5,
        "overrides": [
          {"contains": "fail", "behavior": {"kind": "status", "code": 503}},
          {"contains": "mutate",
           "behavior": {"kind": "mutate",
                        "base": {"kind": "echo-select"},
                        "mutation": "break-syntax"}}
        ]})"));
    CHECK(script.delay_ms == 5);
    CHECK(script.overrides.size() == 2);

    CHECK_THROWS_AS(BehaviorScript::from_json(nlohmann::json::parse(
                        R"({"default": {"kind": "bogus"}})")),
                    InputError);
    CHECK_THROWS_AS(
        BehaviorScript::from_json(nlohmann::json::parse(
            R"({"default": {"kind": "mutate",
                "base": {"kind": "echo-select"},
                "mutation": "no-such"}})")),
        InputError);
}

TEST_CASE("invalid mutations are reported before the server binds") {
    BehaviorScript script;
    script.default_behavior = BehaviorSpec::make_mutate(
        BehaviorSpec::make_status(500), Mutation::BreakSyntax);
    CHECK_THROWS_AS(serve(script), InputError);

    BehaviorScript bad_base;
    bad_base.default_behavior = BehaviorSpec::make_mutate(
        BehaviorSpec::make_template("not sparql at all"),
        Mutation::BreakSyntax);
    CHECK_THROWS_AS(serve(bad_base), InputError);
}

TEST_SUITE_END();
