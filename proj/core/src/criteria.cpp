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

#include "tgmeval/criteria.hpp"

#include <algorithm>
#include <numeric>

#include "tgmeval/sparql/parser.hpp"
#include "tgmeval/sparql/serialize.hpp"

namespace tgmeval::criteria {

using nlohmann::json;
using sparql::QueryAst;
using sparql::QueryForm;
using sparql::Term;
using sparql::TriplePattern;
using sparql::Var;

Severity severity_of(Criterion c) {
    switch (c) {
        case Criterion::TgmFailure:
        case Criterion::Syntax:
        case Criterion::QuestionType:
        case Criterion::DisconnectedTarget:
            return Severity::Critical;
        case Criterion::WrongRange:
        case Criterion::DisconnectedTriple:
            return Severity::Notice;
    }
    return Severity::Critical;
}

std::string criterion_slug(Criterion c) {
    switch (c) {
        case Criterion::TgmFailure: return "tgm-failure";
        case Criterion::Syntax: return "syntax";
        case Criterion::QuestionType: return "question-type";
        case Criterion::DisconnectedTarget: return "disconnected-target";
        case Criterion::WrongRange: return "wrong-range";
        case Criterion::DisconnectedTriple: return "disconnected-triple";
    }
    return "unknown";
}

std::string criterion_label(Criterion c) {
    switch (c) {
        case Criterion::TgmFailure: return "TGM failure";
        case Criterion::Syntax: return "Syntax";
        case Criterion::QuestionType: return "Question type";
        case Criterion::DisconnectedTarget: return "DC target";
        case Criterion::WrongRange: return "Wrong range";
        case Criterion::DisconnectedTriple: return "DC triple";
    }
    return "unknown";
}

std::optional<Criterion> criterion_from_slug(std::string_view slug) {
    for (Criterion c :
         {Criterion::TgmFailure, Criterion::Syntax, Criterion::QuestionType,
          Criterion::DisconnectedTarget, Criterion::WrongRange,
          Criterion::DisconnectedTriple}) {
        if (criterion_slug(c) == slug) return c;
    }
    return std::nullopt;
}

namespace {

Finding make_finding(Criterion c, json detail = json::object()) {
    return Finding{c, severity_of(c), std::move(detail)};
}

// Connectivity keys: variables (alias-expanded one level) and blank nodes.
// Constants never connect.
void term_keys(const Term& term,
               const std::map<Var, std::set<Var>>& aliases,
               std::set<std::string>& out) {
    if (const Var* v = std::get_if<Var>(&term)) {
        auto it = aliases.find(*v);
        if (it != aliases.end()) {
            for (const Var& src : it->second) out.insert("?" + src.name);
        } else {
            out.insert("?" + v->name);
        }
    } else if (const sparql::BlankNode* b =
                   std::get_if<sparql::BlankNode>(&term)) {
        out.insert("_:" + b->label);
    }
}

std::set<std::string> triple_keys(
    const TriplePattern& tp,
    const std::map<Var, std::set<Var>>& aliases) {
    std::set<std::string> keys;
    term_keys(tp.subject, aliases, keys);
    term_keys(tp.predicate, aliases, keys);
    term_keys(tp.object, aliases, keys);
    return keys;
}

std::set<std::string> expanded_target_keys(const QueryAst& tmpl) {
    std::set<std::string> out;
    auto aliases = sparql::alias_sources(tmpl);
    for (const Var& v : sparql::target_variables(tmpl)) {
        auto it = aliases.find(v);
        if (it != aliases.end()) {
            for (const Var& src : it->second) out.insert("?" + src.name);
        } else {
            out.insert("?" + v.name);
        }
    }
    return out;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void merge(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

bool intersects(const std::set<std::string>& a,
                const std::set<std::string>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<std::vector<std::size_t>> connected_components(
    const std::vector<TriplePattern>& patterns,
    const std::map<Var, std::set<Var>>& alias_sources) {
    std::vector<std::set<std::string>> keys;
    keys.reserve(patterns.size());
    for (const TriplePattern& tp : patterns)
        keys.push_back(triple_keys(tp, alias_sources));

    UnionFind uf(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        for (std::size_t j = i + 1; j < patterns.size(); ++j) {
            if (intersects(keys[i], keys[j])) uf.merge(i, j);
        }
    }

    std::map<std::size_t, std::vector<std::size_t>> grouped;
    for (std::size_t i = 0; i < patterns.size(); ++i)
        grouped[uf.find(i)].push_back(i);

    std::vector<std::vector<std::size_t>> components;
    components.reserve(grouped.size());
    for (auto& [root, members] : grouped) components.push_back(members);
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

std::optional<Finding> check_failure(const tgm::TgmOutcome& outcome) {
    if (outcome.is_failure()) {
        const tgm::HttpFailure& f = outcome.failure();
        json detail;
        if (f.status != 0) {
            detail["status"] = f.status;
        } else {
            detail["transport"] = f.transport;
        }
        return make_finding(Criterion::TgmFailure, std::move(detail));
    }
    if (outcome.templates().empty()) {
        return make_finding(Criterion::TgmFailure,
                            json{{"reason", "empty-template-list"}});
    }
    return std::nullopt;
}

std::variant<QueryAst, Finding> check_syntax(const std::string& template_text,
                                             const sparql::PrefixEnv& env) {
    auto result = sparql::parse_query(template_text, env);
    if (sparql::parse_ok(result)) return sparql::parsed_ast(result);
    const sparql::ParseError& err = sparql::parse_error(result);
    json detail;
    detail["line"] = err.line;
    detail["column"] = err.column;
    detail["message"] = err.message;
    detail["snippet"] = err.snippet;
    return make_finding(Criterion::Syntax, std::move(detail));
}

std::optional<Finding> check_question_type(const QueryAst& gold,
                                           const QueryAst& tmpl) {
    bool gold_ask = gold.form == QueryForm::Ask;
    bool tmpl_ask = tmpl.form == QueryForm::Ask;
    if (gold_ask == tmpl_ask) return std::nullopt;
    json detail;
    detail["gold_form"] = gold_ask ? "ask" : "select";
    detail["template_form"] = tmpl_ask ? "ask" : "select";
    return make_finding(Criterion::QuestionType, std::move(detail));
}

std::optional<Finding> check_disconnected_target(const QueryAst& tmpl) {
    if (tmpl.form != QueryForm::Select) return std::nullopt;
    std::set<std::string> targets = expanded_target_keys(tmpl);

    std::set<std::string> pattern_keys;
    static const std::map<Var, std::set<Var>> no_aliases;
    for (const TriplePattern& tp : sparql::triple_patterns(tmpl)) {
        for (const std::string& k : triple_keys(tp, no_aliases))
            pattern_keys.insert(k);
    }

    std::vector<std::string> missing;
    for (const std::string& t : targets) {
        if (!pattern_keys.count(t)) missing.push_back(t);
    }
    if (missing.empty()) return std::nullopt;
    return make_finding(Criterion::DisconnectedTarget,
                        json{{"variables", missing}});
}

namespace {

json range_to_json(const std::optional<sparql::RangeSpec>& range) {
    if (!range) return nullptr;
    json out;
    out["length"] = range->length ? json(*range->length) : json(nullptr);
    out["start"] = range->start;
    return out;
}

}  // namespace

std::optional<Finding> check_wrong_range(const QueryAst& gold,
                                         const QueryAst& tmpl) {
    if (gold.form != QueryForm::Select || tmpl.form != QueryForm::Select)
        return std::nullopt;
    auto expected = sparql::range_of(gold);
    if (!expected) return std::nullopt;
    auto found = sparql::range_of(tmpl);
    if (found && *found == *expected) return std::nullopt;
    json detail;
    detail["expected"] = range_to_json(expected);
    detail["found"] = range_to_json(found);
    return make_finding(Criterion::WrongRange, std::move(detail));
}

std::optional<Finding> check_disconnected_triple(const QueryAst& tmpl) {
    if (tmpl.form != QueryForm::Select) return std::nullopt;
    std::vector<TriplePattern> patterns = sparql::triple_patterns(tmpl);
    if (patterns.empty()) return std::nullopt;

    auto aliases = sparql::alias_sources(tmpl);
    std::set<std::string> targets = expanded_target_keys(tmpl);
    auto components = connected_components(patterns, aliases);

    std::vector<std::size_t> disconnected;
    for (const auto& component : components) {
        std::set<std::string> component_keys;
        for (std::size_t i : component) {
            for (const std::string& k : triple_keys(patterns[i], aliases))
                component_keys.insert(k);
        }
        if (!intersects(component_keys, targets)) {
            disconnected.insert(disconnected.end(), component.begin(),
                                component.end());
        }
    }
    if (disconnected.empty()) return std::nullopt;
    std::sort(disconnected.begin(), disconnected.end());

    json rendered = json::array();
    for (std::size_t i : disconnected)
        rendered.push_back(sparql::serialize(patterns[i]));
    return make_finding(
        Criterion::DisconnectedTriple,
        json{{"triples", disconnected}, {"rendered", rendered}});
}

Verdict evaluate_one(const std::string& question_uid, const QueryAst& gold,
                     const tgm::TgmOutcome& outcome,
                     const sparql::PrefixEnv& env) {
    Verdict verdict;
    verdict.question_uid = question_uid;

    auto finish_with = [&](std::vector<Finding> findings) {
        verdict.all_findings = std::move(findings);
        if (!verdict.all_findings.empty()) {
            verdict.good = false;
            verdict.first_error = verdict.all_findings.front();
        }
        return verdict;
    };

    if (auto f1 = check_failure(outcome)) return finish_with({*f1});

    verdict.template_text = outcome.templates().front().query_text;

    auto parsed = check_syntax(*verdict.template_text, env);
    if (Finding* f2 = std::get_if<Finding>(&parsed))
        return finish_with({std::move(*f2)});
    const QueryAst& tmpl = std::get<QueryAst>(parsed);

    if (auto f3 = check_question_type(gold, tmpl)) return finish_with({*f3});

    std::vector<Finding> findings;
    auto f4 = check_disconnected_target(tmpl);
    if (f4) findings.push_back(*f4);
    if (auto f5 = check_wrong_range(gold, tmpl)) findings.push_back(*f5);
    if (!f4) {
        if (auto f6 = check_disconnected_triple(tmpl))
            findings.push_back(*f6);
    }
    return finish_with(std::move(findings));
}

nlohmann::json verdict_to_json(const Verdict& v) {
    json findings = json::array();
    for (const Finding& f : v.all_findings) {
        findings.push_back(
            {{"criterion", criterion_slug(f.criterion)},
             {"severity",
              f.severity == Severity::Critical ? "critical" : "notice"},
             {"detail", f.detail}});
    }
    json out;
    out["uid"] = v.question_uid;
    out["verdict"] = v.good ? "good" : "error";
    if (!v.good) {
        out["criterion"] = criterion_slug(v.first_error->criterion);
        out["severity"] = v.first_error->severity == Severity::Critical
                              ? "critical"
                              : "notice";
    }
    out["findings"] = std::move(findings);
    out["template"] = v.template_text ? json(*v.template_text) : json(nullptr);
    return out;
}

Verdict verdict_from_json(const nlohmann::json& j) {
    Verdict v;
    v.question_uid = j.value("uid", "");
    v.good = j.value("verdict", "good") == "good";
    for (const json& fj : j.value("findings", json::array())) {
        Finding f;
        auto c = criterion_from_slug(fj.value("criterion", ""));
        f.criterion = c.value_or(Criterion::TgmFailure);
        f.severity = severity_of(f.criterion);
        f.detail = fj.value("detail", json::object());
        v.all_findings.push_back(std::move(f));
    }
    if (!v.good && !v.all_findings.empty())
        v.first_error = v.all_findings.front();
    if (j.contains("template") && j["template"].is_string())
        v.template_text = j["template"].get<std::string>();
    return v;
}

}  // namespace tgmeval::criteria
