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

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tgmeval/sparql/ast.hpp"

namespace tgmeval::mock {

/// Single-defect template mutations, each designed to trip exactly one
/// criterion against a suitable gold query.
enum class Mutation {
    FlipForm,
    DropRange,
    AddDisconnectedTarget,
    AddDisconnectedTriple,
    BreakSyntax,
};

struct BehaviorSpec {
    enum class Kind { Status, EmptyList, Template, EchoSelect, Mutate };
    Kind kind = Kind::EchoSelect;
    int status = 500;                         // Status
    std::string template_text;                // Template
    std::shared_ptr<BehaviorSpec> base;       // Mutate
    Mutation mutation = Mutation::FlipForm;   // Mutate

    static BehaviorSpec make_status(int code);
    static BehaviorSpec make_empty_list();
    static BehaviorSpec make_template(std::string query);
    static BehaviorSpec make_echo_select();
    static BehaviorSpec make_mutate(BehaviorSpec base, Mutation mutation);
};

/// Question-text substring -> behavior, first match wins; the default covers
/// everything else. delay_ms holds responses open so concurrency is
/// observable on the gauge.
struct BehaviorScript {
    BehaviorSpec default_behavior = BehaviorSpec::make_echo_select();
    std::vector<std::pair<std::string, BehaviorSpec>> overrides;
    int delay_ms = 0;

    static BehaviorScript from_json(const nlohmann::json& j);
};

/// The canonical all-variable select template the mock answers with.
std::string echo_select_text();

/// Mutates a parseable template and returns the resulting query text.
/// Throws InputError when the mutation does not apply (e.g. DropRange on a
/// query without a range).
std::string apply_mutation(const sparql::QueryAst& base_template,
                           Mutation mutation);

/// A local TGM double speaking the default wire convention
/// ({"templates": [{"query",.., "slots",.., "score"..}]}).
/// GET /__gauge reports {"in_flight", "max_in_flight"}.
class MockServer {
  public:
    ~MockServer();
    int port() const;
    std::string url() const;  // http://127.0.0.1:<port>/tgm
    void stop();
    int in_flight() const;
    int max_in_flight() const;

  private:
    friend std::unique_ptr<MockServer> serve(const BehaviorScript&, int);
    MockServer();
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Compiles the script (invalid behaviors are reported up front), binds the
/// port (0 picks a free one) and serves until stop().
std::unique_ptr<MockServer> serve(const BehaviorScript& script, int port = 0);

}  // namespace tgmeval::mock
