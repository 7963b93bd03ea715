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

#include <filesystem>
#include <string>
#include <vector>

#include "tgmeval/corpus.hpp"
#include "tgmeval/normalize.hpp"
#include "tgmeval/sparql/prefix_env.hpp"
#include "tgmeval/tgm_client.hpp"

namespace tgmeval::config {

/// One declarative file drives the whole pipeline. Relative paths resolve
/// against the config file's directory; TGM_EVAL_CACHE_PATH and
/// TGM_EVAL_OUTPUT_DIR env vars override the two output locations.
struct HarnessConfig {
    std::vector<corpus::DatasetDescriptor> datasets;
    std::vector<tgm::EndpointConfig> endpoints;
    std::vector<normalize::RewriteRule> rewrite_rules;  // defaults if empty
    sparql::PrefixEnv prefix_env;  // layered over the built-in table
    int concurrency = 4;
    std::filesystem::path cache_path = "cache.jsonl";
    std::filesystem::path output_dir = "out";

    std::filesystem::path corpus_file() const {
        return output_dir / "corpus.jsonl";
    }
    std::filesystem::path stats_file() const {
        return output_dir / "corpus-stats.json";
    }
    std::filesystem::path verdicts_file(const std::string& endpoint_id) const {
        return output_dir / ("verdicts-" + endpoint_id + ".jsonl");
    }

    /// Throws InputError on unreadable files, malformed JSON, duplicate
    /// endpoint ids or non-positive concurrency.
    static HarnessConfig load(const std::filesystem::path& path);
};

}  // namespace tgmeval::config
