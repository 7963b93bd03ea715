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

#include "tgmeval/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include <json.hpp>

#include "tgmeval/errors.hpp"

namespace tgmeval::config {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
    return p.is_absolute() ? p : base / p;
}

corpus::DatasetDescriptor dataset_from_json(const json& j,
                                            const std::filesystem::path& base) {
    corpus::DatasetDescriptor d;
    d.name = j.value("name", "");
    if (d.name.empty()) throw InputError("dataset entry without a name");
    std::string family = j.value("family", "qald");
    if (family == "qald") {
        d.family = corpus::DatasetFamily::Qald;
    } else if (family == "lc-quad") {
        d.family = corpus::DatasetFamily::LcQuad;
    } else {
        throw InputError("dataset '" + d.name + "': unknown family '" +
                         family + "'");
    }
    d.order_index = j.value("order_index", 0);
    d.path = resolve(base, j.value("path", ""));
    std::string format = j.value(
        "format", d.family == corpus::DatasetFamily::Qald ? "qald-json"
                                                          : "lcquad-json");
    if (format == "qald-json") {
        d.format = corpus::DatasetFormat::QaldJson;
    } else if (format == "lcquad-json") {
        d.format = corpus::DatasetFormat::LcQuadJson;
    } else {
        throw InputError("dataset '" + d.name + "': unknown format '" +
                         format + "'");
    }
    d.excluded = j.value("excluded", false);
    d.exclusion_reason = j.value("exclusion_reason", "");
    return d;
}

tgm::EndpointConfig endpoint_from_json(const json& j) {
    tgm::EndpointConfig e;
    e.id = j.value("id", "");
    e.url = j.value("url", "");
    if (e.id.empty() || e.url.empty())
        throw InputError("endpoint entries need id and url");
    e.language = j.value("language", "en");
    if (j.contains("request_shape")) {
        const json& r = j["request_shape"];
        e.request_shape.nl_field = r.value("nl_field", "string");
        e.request_shape.language_field = r.value("language_field", "language");
    }
    if (j.contains("response_shape")) {
        const json& r = j["response_shape"];
        e.response_shape.templates_path =
            r.value("templates_path", "templates");
        e.response_shape.query_field = r.value("query_field", "query");
        e.response_shape.slots_field = r.value("slots_field", "slots");
        e.response_shape.score_field = r.value("score_field", "score");
    }
    int timeout_ms = j.value("timeout_ms", 5000);
    if (timeout_ms <= 0)
        throw InputError("endpoint '" + e.id + "': timeout_ms must be > 0");
    e.timeout = std::chrono::milliseconds(timeout_ms);
    e.max_concurrency = j.value("max_concurrency", 0);  // 0 = use global
    return e;
}

normalize::RewriteRule rule_from_json(const json& j) {
    normalize::RewriteRule rule;
    rule.id = j.value("id", "");
    rule.pattern = j.value("pattern", "");
    rule.replacement = j.value("replacement", "");
    rule.description = j.value("description", "");
    if (rule.id.empty()) throw InputError("rewrite rule without an id");
    if (rule.pattern.empty()) {
        // a pattern-less entry pulls in the builtin with that id
        for (const auto& builtin : normalize::default_rules()) {
            if (builtin.id == rule.id) return builtin;
        }
        throw InputError("rewrite rule '" + rule.id +
                         "' has no pattern and is not a builtin");
    }
    rule.kind = normalize::RewriteRule::Kind::Text;
    return rule;
}

}  // namespace

HarnessConfig HarnessConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in config " + path.string() + ": " +
                         e.what());
    }
    std::filesystem::path base = path.has_parent_path()
                                     ? path.parent_path()
                                     : std::filesystem::path(".");

    HarnessConfig cfg;
    for (const json& d : doc.value("datasets", json::array()))
        cfg.datasets.push_back(dataset_from_json(d, base));

    std::set<std::string> endpoint_ids;
    for (const json& e : doc.value("endpoints", json::array())) {
        tgm::EndpointConfig endpoint = endpoint_from_json(e);
        if (!endpoint_ids.insert(endpoint.id).second)
            throw InputError("duplicate endpoint id: " + endpoint.id);
        cfg.endpoints.push_back(std::move(endpoint));
    }

    if (doc.contains("rewrite_rules")) {
        for (const json& r : doc["rewrite_rules"])
            cfg.rewrite_rules.push_back(rule_from_json(r));
    } else {
        cfg.rewrite_rules = normalize::default_rules();
    }

    if (doc.contains("prefix_env")) {
        for (const auto& [label, iri] : doc["prefix_env"].items()) {
            if (!iri.is_string())
                throw InputError("prefix_env values must be strings");
            cfg.prefix_env.declare(label, iri.get<std::string>());
        }
    }

    cfg.concurrency = doc.value("concurrency", 4);
    if (cfg.concurrency < 1)
        throw InputError("concurrency must be a positive integer");
    cfg.cache_path = resolve(base, doc.value("cache_path", "cache.jsonl"));
    cfg.output_dir = resolve(base, doc.value("output_dir", "out"));

    if (const char* env = std::getenv("TGM_EVAL_CACHE_PATH"))
        cfg.cache_path = env;
    if (const char* env = std::getenv("TGM_EVAL_OUTPUT_DIR"))
        cfg.output_dir = env;

    for (auto& endpoint : cfg.endpoints) {
        if (endpoint.max_concurrency <= 0)
            endpoint.max_concurrency = cfg.concurrency;
    }
    return cfg;
}

}  // namespace tgmeval::config
