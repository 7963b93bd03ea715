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

#include <string_view>

#include "tgmeval/sparql/ast.hpp"
#include "tgmeval/sparql/prefix_env.hpp"

namespace tgmeval::sparql {

/// Parses a pragmatic SPARQL 1.1 subset (SELECT/ASK, BGPs with ;/,/a sugar,
/// OPTIONAL/UNION/FILTER/BIND/VALUES, solution modifiers, aggregates).
/// Prefixed names expand via inline PREFIX declarations first, then env.
/// Never throws: every failure comes back as a ParseError value. Property
/// paths, subqueries, SERVICE and CONSTRUCT/DESCRIBE forms are rejected.
ParseResult parse_query(std::string_view text,
                        const PrefixEnv& env = PrefixEnv());

}  // namespace tgmeval::sparql
