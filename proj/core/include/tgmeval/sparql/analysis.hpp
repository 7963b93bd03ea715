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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tgmeval/sparql/ast.hpp"

namespace tgmeval::sparql {

/// An explicit answer range: LIMIT l OFFSET (s-1). length is empty when an
/// offset appears without a limit (unbounded length).
struct RangeSpec {
    std::optional<std::uint64_t> length;
    std::uint64_t start = 1;
    bool operator==(const RangeSpec&) const = default;
};

QueryForm query_form(const QueryAst& ast);

/// The variables a select query asks to be solved: plain projected variables
/// plus the variables inside each aliased projection expression (the alias
/// itself is not a target). SELECT * targets every variable visible in the
/// patterns (triples, BIND aliases, VALUES vars). Throws std::logic_error
/// for an Ask query.
std::set<Var> target_variables(const QueryAst& ast);

/// All triple patterns in document order; Optional and both Union branches
/// are flattened into the list.
std::vector<TriplePattern> triple_patterns(const QueryAst& ast);

/// None if neither LIMIT nor OFFSET is present.
std::optional<RangeSpec> range_of(const QueryAst& ast);

/// One-level alias map: projection (expr AS ?v) and BIND(expr AS ?v) aliases
/// to the variables of their defining expressions.
std::map<Var, std::set<Var>> alias_sources(const QueryAst& ast);

void collect_variables(const ExprPtr& expr, std::set<Var>& out);
void collect_variables(const Term& term, std::set<Var>& out);

/// Variables visible in a pattern list: triple components, BIND aliases and
/// VALUES variables (what SELECT * projects). FILTER-internal variables are
/// not included.
std::set<Var> pattern_variables(const std::vector<PatternElement>& elements);

}  // namespace tgmeval::sparql
