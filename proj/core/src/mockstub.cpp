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

#include "tgmeval/mockstub.hpp"

#include <atomic>
#include <chrono>
#include <set>
#include <thread>

#include <httplib.h>

#include "tgmeval/errors.hpp"
#include "tgmeval/sparql/analysis.hpp"
#include "tgmeval/sparql/parser.hpp"
#include "tgmeval/sparql/serialize.hpp"

namespace tgmeval::mock {

using nlohmann::json;
using sparql::QueryAst;
using sparql::QueryForm;
using sparql::Var;

BehaviorSpec BehaviorSpec::make_status(int code) {
    BehaviorSpec spec;
    spec.kind = Kind::Status;
    spec.status = code;
    return spec;
}
BehaviorSpec BehaviorSpec::make_empty_list() {
    BehaviorSpec spec;
    spec.kind = Kind::EmptyList;
    return spec;
}
BehaviorSpec BehaviorSpec::make_template(std::string query) {
    BehaviorSpec spec;
    spec.kind = Kind::Template;
    spec.template_text = std::move(query);
    return spec;
}
BehaviorSpec BehaviorSpec::make_echo_select() {
    BehaviorSpec spec;
    spec.kind = Kind::EchoSelect;
    return spec;
}
BehaviorSpec BehaviorSpec::make_mutate(BehaviorSpec base, Mutation mutation) {
    BehaviorSpec spec;
    spec.kind = Kind::Mutate;
    spec.base = std::make_shared<BehaviorSpec>(std::move(base));
    spec.mutation = mutation;
    return spec;
}

std::string echo_select_text() {
    return "SELECT ?v1 WHERE { ?v1 ?v2 ?v3 . }";
}

namespace {

Mutation mutation_from_string(const std::string& name) {
    if (name == "flip-form") return Mutation::FlipForm;
    if (name == "drop-range") return Mutation::DropRange;
    if (name == "add-disconnected-target")
        return Mutation::AddDisconnectedTarget;
    if (name == "add-disconnected-triple")
        return Mutation::AddDisconnectedTriple;
    if (name == "break-syntax") return Mutation::BreakSyntax;
    throw InputError("unknown mutation: " + name);
}

BehaviorSpec behavior_from_json(const json& j) {
    std::string kind = j.value("kind", "");
    if (kind == "status")
        return BehaviorSpec::make_status(j.value("code", 500));
    if (kind == "empty-list") return BehaviorSpec::make_empty_list();
    if (kind == "template")
        return BehaviorSpec::make_template(j.value("query", ""));
    if (kind == "echo-select") return BehaviorSpec::make_echo_select();
    if (kind == "mutate") {
        if (!j.contains("base"))
            throw InputError("mutate behavior requires a base");
        return BehaviorSpec::make_mutate(
            behavior_from_json(j["base"]),
            mutation_from_string(j.value("mutation", "")));
    }
    throw InputError("unknown mock behavior kind: " + kind);
}

Var fresh_var(const std::set<Var>& used, const std::string& stem) {
    for (int i = 1;; ++i) {
        Var v{stem + std::to_string(i)};
        if (!used.count(v)) return v;
    }
}

std::string template_body(const std::string& query) {
    json body;
    body["templates"] = json::array(
        {{{"query", query}, {"slots", json::array()}, {"score", 1.0}}});
    return body.dump();
}

struct CompiledBehavior {
    int status = 200;
    std::string body;
};

// Behaviors resolve to a fixed response; inapplicable mutations surface
// before the server binds.
CompiledBehavior compile(const BehaviorSpec& spec) {
    switch (spec.kind) {
        case BehaviorSpec::Kind::Status:
            return {spec.status, json{{"error", "injected"}}.dump()};
        case BehaviorSpec::Kind::EmptyList:
            return {200, json{{"templates", json::array()}}.dump()};
        case BehaviorSpec::Kind::Template:
            return {200, template_body(spec.template_text)};
        case BehaviorSpec::Kind::EchoSelect:
            return {200, template_body(echo_select_text())};
        case BehaviorSpec::Kind::Mutate: {
            if (!spec.base) throw InputError("mutate behavior without base");
            CompiledBehavior base = compile(*spec.base);
            if (base.status != 200)
                throw InputError("mutate base must produce a template");
            json body = json::parse(base.body);
            const json& templates = body["templates"];
            if (!templates.is_array() || templates.empty())
                throw InputError("mutate base must produce a template");
            std::string text = templates[0]["query"].get<std::string>();
            auto parsed = sparql::parse_query(text);
            if (!sparql::parse_ok(parsed))
                throw InputError("mutate base does not parse: " + text);
            return {200, template_body(apply_mutation(
                             sparql::parsed_ast(parsed), spec.mutation))};
        }
    }
    throw InputError("unreachable behavior kind");
}

}  // namespace

BehaviorScript BehaviorScript::from_json(const json& j) {
    BehaviorScript script;
    if (j.contains("default"))
        script.default_behavior = behavior_from_json(j["default"]);
    script.delay_ms = j.value("delay_ms", 0);
    for (const json& entry : j.value("overrides", json::array())) {
        if (!entry.contains("contains") || !entry.contains("behavior"))
            throw InputError(
                "mock override needs 'contains' and 'behavior' fields");
        script.overrides.emplace_back(
            entry["contains"].get<std::string>(),
            behavior_from_json(entry["behavior"]));
    }
    return script;
}

std::string apply_mutation(const QueryAst& base_template, Mutation mutation) {
    QueryAst ast = base_template;
    switch (mutation) {
        case Mutation::BreakSyntax: {
            std::string text = sparql::serialize(ast);
            auto brace = text.rfind('}');
            if (brace == std::string::npos)
                throw InputError("break-syntax: no closing brace");
            text.erase(brace, 1);
            return text;
        }
        case Mutation::FlipForm: {
            if (ast.form == QueryForm::Select) {
                ast.form = QueryForm::Ask;
                ast.projection.reset();
            } else {
                // the fresh projected variable is absent from the patterns,
                // so the flipped query is also a disconnected target
                ast.form = QueryForm::Select;
                sparql::Projection proj;
                proj.items.emplace_back(
                    fresh_var(sparql::pattern_variables(ast.where), "flip"));
                ast.projection = std::move(proj);
            }
            return sparql::serialize(ast);
        }
        case Mutation::DropRange: {
            if (!ast.modifiers.limit && !ast.modifiers.offset)
                throw InputError("drop-range: query has no limit/offset");
            ast.modifiers.limit.reset();
            ast.modifiers.offset.reset();
            return sparql::serialize(ast);
        }
        case Mutation::AddDisconnectedTarget: {
            if (ast.form != QueryForm::Select || !ast.projection ||
                ast.projection->star)
                throw InputError(
                    "add-disconnected-target needs an itemized select "
                    "projection");
            std::set<Var> used = sparql::pattern_variables(ast.where);
            used.merge(sparql::target_variables(ast));
            ast.projection->items.emplace_back(fresh_var(used, "v9"));
            return sparql::serialize(ast);
        }
        case Mutation::AddDisconnectedTriple: {
            std::set<Var> used = sparql::pattern_variables(ast.where);
            sparql::Bgp bgp;
            Var s = fresh_var(used, "d");
            used.insert(s);
            Var p = fresh_var(used, "d");
            used.insert(p);
            Var o = fresh_var(used, "d");
            bgp.triples.push_back(sparql::TriplePattern{s, p, o});
            ast.where.push_back(sparql::PatternElement{std::move(bgp)});
            return sparql::serialize(ast);
        }
    }
    throw InputError("unreachable mutation");
}

struct MockServer::Impl {
    httplib::Server server;
    std::thread thread;
    int port = 0;
    std::atomic<int> in_flight{0};
    std::atomic<int> max_in_flight{0};
    CompiledBehavior default_behavior;
    std::vector<std::pair<std::string, CompiledBehavior>> overrides;
    int delay_ms = 0;
};

MockServer::MockServer() : impl_(std::make_unique<Impl>()) {}
MockServer::~MockServer() { stop(); }

int MockServer::port() const { return impl_->port; }

std::string MockServer::url() const {
    return "http://127.0.0.1:" + std::to_string(impl_->port) + "/tgm";
}

void MockServer::stop() {
    if (impl_->server.is_running()) impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

int MockServer::in_flight() const { return impl_->in_flight.load(); }
int MockServer::max_in_flight() const { return impl_->max_in_flight.load(); }

std::unique_ptr<MockServer> serve(const BehaviorScript& script, int port) {
    auto server = std::unique_ptr<MockServer>(new MockServer());
    MockServer::Impl& impl = *server->impl_;
    impl.default_behavior = compile(script.default_behavior);
    for (const auto& [pattern, behavior] : script.overrides)
        impl.overrides.emplace_back(pattern, compile(behavior));
    impl.delay_ms = script.delay_ms;

    impl.server.Get("/__gauge", [&impl](const httplib::Request&,
                                        httplib::Response& res) {
        json body;
        body["in_flight"] = impl.in_flight.load();
        body["max_in_flight"] = impl.max_in_flight.load();
        res.set_content(body.dump(), "application/json");
    });

    impl.server.Post(".*", [&impl](const httplib::Request& req,
                                   httplib::Response& res) {
        int current = ++impl.in_flight;
        int seen = impl.max_in_flight.load();
        while (current > seen &&
               !impl.max_in_flight.compare_exchange_weak(seen, current)) {
        }
        if (impl.delay_ms > 0)
            std::this_thread::sleep_for(
                std::chrono::milliseconds(impl.delay_ms));

        std::string question;
        try {
            question = json::parse(req.body).value("string", "");
        } catch (const json::exception&) {
        }
        const CompiledBehavior* behavior = &impl.default_behavior;
        for (const auto& [pattern, compiled] : impl.overrides) {
            if (question.find(pattern) != std::string::npos) {
                behavior = &compiled;
                break;
            }
        }
        res.status = behavior->status;
        res.set_content(behavior->body, "application/json");
        --impl.in_flight;
    });

    const char* host = "127.0.0.1";
    if (port == 0) {
        impl.port = impl.server.bind_to_any_port(host);
        if (impl.port <= 0) throw InputError("mock server: cannot bind a port");
    } else {
        if (!impl.server.bind_to_port(host, port))
            throw InputError("mock server: cannot bind port " +
                             std::to_string(port));
        impl.port = port;
    }
    impl.thread = std::thread([&impl] { impl.server.listen_after_bind(); });
    impl.server.wait_until_ready();
    return server;
}

}  // namespace tgmeval::mock
