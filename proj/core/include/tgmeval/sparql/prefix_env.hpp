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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tgmeval::sparql {

/// Ordered prefix-label -> namespace-IRI mappings. Resolution falls back to
/// the built-in default table for labels not declared here, so queries that
/// omit PREFIX declarations for the common namespaces still parse.
class PrefixEnv {
  public:
    PrefixEnv() = default;

    /// Declares or shadows a mapping. Throws std::invalid_argument if the IRI
    /// is empty or contains whitespace.
    void declare(std::string label, std::string iri);

    /// Lookup in this environment only (no default fallback).
    std::optional<std::string> lookup(std::string_view label) const;

    /// Lookup here first, then the default table.
    std::optional<std::string> resolve(std::string_view label) const;

    const std::vector<std::pair<std::string, std::string>>& mappings() const {
        return mappings_;
    }

    /// The built-in namespace table the parser is initialized with.
    static const PrefixEnv& default_env();

  private:
    std::vector<std::pair<std::string, std::string>> mappings_;
};

}  // namespace tgmeval::sparql
