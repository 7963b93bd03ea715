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

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tgmeval/sparql/analysis.hpp"
#include "tgmeval/sparql/ast.hpp"
#include "tgmeval/sparql/prefix_env.hpp"
#include "tgmeval/tgm_client.hpp"

namespace tgmeval::criteria {

/// The six checks, applied in this exact order; the first one that fires
/// decides the verdict.
enum class Criterion {
    TgmFailure = 1,
    Syntax = 2,
    QuestionType = 3,
    DisconnectedTarget = 4,
    WrongRange = 5,
    DisconnectedTriple = 6,
};

enum class Severity { Critical, Notice };

/// Fixed mapping: criteria 1-4 are critical, 5-6 are notices.
Severity severity_of(Criterion c);

std::string criterion_slug(Criterion c);    // e.g. "disconnected-target"
std::string criterion_label(Criterion c);   // e.g. "DC target"
std::optional<Criterion> criterion_from_slug(std::string_view slug);

struct Finding {
    Criterion criterion = Criterion::TgmFailure;
    Severity severity = Severity::Critical;
    nlohmann::json detail;  // offending variables, triple indices, ranges
};

struct Verdict {
    std::string question_uid;
    bool good = true;
    std::optional<Finding> first_error;       // engaged iff !good
    std::vector<Finding> all_findings;        // ordered by ordinal
    std::optional<std::string> template_text; // raw text of the first candidate
};

// --- the six checks ---

/// Criterion 1: HTTP failure, or an empty template list (detail
/// "empty-template-list") — nothing can proceed through the framework.
std::optional<Finding> check_failure(const tgm::TgmOutcome& outcome);

/// Criterion 2: the template must parse under the same grammar as the gold
/// queries. Returns the AST on success.
std::variant<sparql::QueryAst, Finding> check_syntax(
    const std::string& template_text, const sparql::PrefixEnv& env);

/// Criterion 3: fires iff exactly one of the two queries is an ask query.
std::optional<Finding> check_question_type(const sparql::QueryAst& gold,
                                           const sparql::QueryAst& tmpl);

/// Criterion 4: select templates only. Targets (aliases resolved) that occur
/// in no triple pattern (blank nodes count as variables).
std::optional<Finding> check_disconnected_target(const sparql::QueryAst& tmpl);

/// Criterion 5: only when both queries are selects and the gold has an
/// explicit range. A template without limit/offset counts as different; a
/// missing offset means start 1 on either side.
std::optional<Finding> check_wrong_range(const sparql::QueryAst& gold,
                                         const sparql::QueryAst& tmpl);

/// Criterion 6: select templates that passed criterion 4. Triples whose
/// connected component (under variable sharing, after alias resolution)
/// contains no target variable.
std::optional<Finding> check_disconnected_triple(const sparql::QueryAst& tmpl);

/// Runs criteria 1..6 with the gating rules: critical findings at steps 1-3
/// stop everything; a disconnected target suppresses the disconnected-triple
/// check; wrong range and disconnected triple accumulate.
Verdict evaluate_one(const std::string& question_uid,
                     const sparql::QueryAst& gold,
                     const tgm::TgmOutcome& outcome,
                     const sparql::PrefixEnv& env);

/// Partition of pattern indices under the shares-a-variable relation.
/// Variables expand one level through alias_sources; blank nodes connect
/// like variables; shared IRIs or literals do not. Components are ordered by
/// smallest member, members ascending.
std::vector<std::vector<std::size_t>> connected_components(
    const std::vector<sparql::TriplePattern>& patterns,
    const std::map<sparql::Var, std::set<sparql::Var>>& alias_sources);

// --- verdict (de)serialization: JSON-lines records ---

nlohmann::json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

}  // namespace tgmeval::criteria
