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
#include <string_view>
#include <vector>

namespace tgmeval::normalize {

/// A single rewrite. Text rules are regular expressions applied outside
/// string literals and IRIs, with $1..$9 capture references and ${fresh}
/// fresh-variable slots in the replacement. The order-by hoist cannot be
/// expressed as a local substitution and is a built-in token-level rule.
struct RewriteRule {
    enum class Kind { Text, HoistOrderByAggregate };
    std::string id;
    Kind kind = Kind::Text;
    std::string pattern;      // ECMAScript regex, case-insensitive
    std::string replacement;  // capture refs + ${fresh}
    std::string description;
};

struct NormalizationResult {
    std::string text;
    std::vector<std::string> applied;  // rule ids in firing order
    bool changed = false;
};

/// The rewrites that make the vendor-extended gold queries of the supported
/// corpora conform to the specification grammar:
///   alias-bare-aggregate     SELECT [DISTINCT] AGG(x)
///                            -> SELECT [DISTINCT] (AGG(x) AS ?tgm_eval_N)
///   hoist-order-by-aggregate ORDER BY DESC(AGG(x))
///                            -> projection gains (AGG(x) AS ?tgm_eval_N),
///                               sort key becomes DESC(?tgm_eval_N)
/// Fresh-variable counters increase left to right and skip names already
/// present in the input.
std::vector<RewriteRule> default_rules();

/// Applies the rules in list order, each at all non-overlapping sites, in a
/// single pass. Identity on text no rule matches.
NormalizationResult normalize_query(std::string_view text,
                                    const std::vector<RewriteRule>& rules);

}  // namespace tgmeval::normalize
