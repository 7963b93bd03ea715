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

#include <string>

#include "tgmeval/sparql/ast.hpp"

namespace tgmeval::sparql {

/// Canonical deterministic text: uppercase keywords, absolute IRIs, one
/// trailing dot per triple. parse_query(serialize(a)) is structurally
/// equal to a, with no prefix environment needed.
std::string serialize(const QueryAst& ast);

std::string serialize(const TriplePattern& tp);
std::string serialize(const Term& term);
std::string serialize_expr(const ExprPtr& expr);

}  // namespace tgmeval::sparql
