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

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tgmeval/corpus.hpp"

namespace tgmeval::tgm {

/// Field names of the outgoing request body.
struct RequestShape {
    std::string nl_field = "string";
    std::string language_field = "language";
};

/// Where templates live in the response body. templates_path is a
/// dot-separated object path; empty means the body itself is the array.
struct ResponseShape {
    std::string templates_path = "templates";
    std::string query_field = "query";
    std::string slots_field = "slots";
    std::string score_field = "score";
};

struct EndpointConfig {
    std::string id;
    std::string url;
    std::string language = "en";
    RequestShape request_shape;
    ResponseShape response_shape;
    std::chrono::milliseconds timeout{5000};
    int max_concurrency = 4;
};

struct TemplateCandidate {
    std::string query_text;
    nlohmann::json slots = nlohmann::json::array();  // carried verbatim
    std::optional<nlohmann::json> score;
};

/// Non-200 status, or a transport-level failure (status 0 + tag).
struct HttpFailure {
    int status = 0;
    std::string transport;
};

struct TgmOutcome {
    std::variant<HttpFailure, std::vector<TemplateCandidate>> value;

    bool is_failure() const {
        return std::holds_alternative<HttpFailure>(value);
    }
    const HttpFailure& failure() const { return std::get<HttpFailure>(value); }
    const std::vector<TemplateCandidate>& templates() const {
        return std::get<std::vector<TemplateCandidate>>(value);
    }
};

nlohmann::json outcome_to_json(const TgmOutcome& outcome);
TgmOutcome outcome_from_json(const nlohmann::json& j);

struct CacheRecord {
    std::string endpoint_id;
    std::string question_uid;
    std::string request_digest;
    TgmOutcome outcome;
    std::string fetched_at;  // ISO-8601 UTC; empty in replayed copies
};

/// JSON-lines cache keyed by (endpoint_id, question_uid, request_digest).
class Cache {
  public:
    static Cache load(const std::filesystem::path& path);  // missing -> empty
    void save(const std::filesystem::path& path) const;

    /// Replaces any record for the same (endpoint, uid).
    void put(CacheRecord record);
    const CacheRecord* find(const std::string& endpoint_id,
                            const std::string& uid,
                            const std::string& digest) const;
    std::size_t size() const { return records_.size(); }

  private:
    // key: endpoint_id \x1f uid
    std::map<std::string, CacheRecord> records_;
};

enum class FetchMode { Record, Replay, Passthrough };

/// The serialized POST body for a question (canonical key order, so the
/// request digest is stable).
std::string request_body(const EndpointConfig& endpoint,
                         const corpus::Question& question);

/// One POST; any non-200 status or transport problem becomes an HttpFailure
/// value, never an exception.
TgmOutcome fetch_template(const EndpointConfig& endpoint,
                          const corpus::Question& question);

/// Outcome per question uid. Record re-fetches everything and overwrites the
/// cache; Replay answers from the cache only and throws CoverageError
/// listing missing uids; Passthrough reuses hits and fetches misses,
/// appending them. At most max_concurrency requests are in flight.
std::map<std::string, TgmOutcome> fetch_all(
    const EndpointConfig& endpoint,
    const std::vector<corpus::Question>& questions, Cache& cache,
    FetchMode mode);

}  // namespace tgmeval::tgm
