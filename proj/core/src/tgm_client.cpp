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

#include "tgmeval/tgm_client.hpp"

#include <atomic>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "tgmeval/errors.hpp"
#include "tgmeval/util.hpp"

namespace tgmeval::tgm {

using nlohmann::json;

namespace {

struct SplitUrl {
    std::string base;  // scheme://host[:port]
    std::string path;  // leading slash, "/" when absent
};

SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw InputError("endpoint URL must include a scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string now_utc_iso() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Walks a dot-separated object path; empty path means the root.
const json* navigate(const json& doc, const std::string& path) {
    const json* node = &doc;
    if (path.empty()) return node;
    std::size_t pos = 0;
    while (pos <= path.size()) {
        auto dot = path.find('.', pos);
        std::string key = path.substr(
            pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (!node->is_object() || !node->contains(key)) return nullptr;
        node = &(*node)[key];
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return node;
}

TgmOutcome parse_response_body(const EndpointConfig& endpoint,
                               const std::string& body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::exception&) {
        return TgmOutcome{HttpFailure{0, "invalid-response-body"}};
    }
    const json* list = navigate(doc, endpoint.response_shape.templates_path);
    if (list == nullptr || !list->is_array())
        return TgmOutcome{HttpFailure{0, "invalid-response-body"}};

    std::vector<TemplateCandidate> candidates;
    for (const json& item : *list) {
        if (!item.is_object()) continue;
        const auto& shape = endpoint.response_shape;
        if (!item.contains(shape.query_field) ||
            !item[shape.query_field].is_string())
            continue;  // a candidate without a query text is unusable
        TemplateCandidate candidate;
        candidate.query_text = item[shape.query_field].get<std::string>();
        if (item.contains(shape.slots_field))
            candidate.slots = item[shape.slots_field];
        if (item.contains(shape.score_field) &&
            !item[shape.score_field].is_null())
            candidate.score = item[shape.score_field];
        candidates.push_back(std::move(candidate));
    }
    return TgmOutcome{std::move(candidates)};
}

std::string cache_key(const std::string& endpoint_id, const std::string& uid) {
    return endpoint_id + '\x1f' + uid;
}

}  // namespace

json outcome_to_json(const TgmOutcome& outcome) {
    json out;
    if (outcome.is_failure()) {
        const HttpFailure& f = outcome.failure();
        out["type"] = "http-failure";
        out["status"] = f.status;
        out["transport"] = f.transport.empty() ? json(nullptr)
                                               : json(f.transport);
        return out;
    }
    json templates = json::array();
    for (const TemplateCandidate& c : outcome.templates()) {
        json t;
        t["query"] = c.query_text;
        t["slots"] = c.slots;
        t["score"] = c.score ? *c.score : json(nullptr);
        templates.push_back(std::move(t));
    }
    out["type"] = "templates";
    out["templates"] = std::move(templates);
    return out;
}

TgmOutcome outcome_from_json(const json& j) {
    if (j.value("type", "") == "http-failure") {
        HttpFailure f;
        f.status = j.value("status", 0);
        if (j.contains("transport") && j["transport"].is_string())
            f.transport = j["transport"].get<std::string>();
        return TgmOutcome{std::move(f)};
    }
    std::vector<TemplateCandidate> candidates;
    for (const json& t : j.value("templates", json::array())) {
        TemplateCandidate c;
        c.query_text = t.value("query", "");
        c.slots = t.value("slots", json::array());
        if (t.contains("score") && !t["score"].is_null()) c.score = t["score"];
        candidates.push_back(std::move(c));
    }
    return TgmOutcome{std::move(candidates)};
}

Cache Cache::load(const std::filesystem::path& path) {
    Cache cache;
    std::ifstream in(path);
    if (!in) return cache;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw InputError("cache file " + path.string() + " line " +
                             std::to_string(line_no) + ": " + e.what());
        }
        CacheRecord record;
        record.endpoint_id = j.value("endpoint_id", "");
        record.question_uid = j.value("question_uid", "");
        record.request_digest = j.value("request_digest", "");
        record.outcome = outcome_from_json(j.value("outcome", json::object()));
        record.fetched_at = j.value("fetched_at", "");
        cache.put(std::move(record));
    }
    return cache;
}

void Cache::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write cache file: " + path.string());
    for (const auto& [key, record] : records_) {
        json j;
        j["endpoint_id"] = record.endpoint_id;
        j["question_uid"] = record.question_uid;
        j["request_digest"] = record.request_digest;
        j["outcome"] = outcome_to_json(record.outcome);
        j["fetched_at"] = record.fetched_at;
        out << j.dump() << '\n';
    }
}

void Cache::put(CacheRecord record) {
    std::string key = cache_key(record.endpoint_id, record.question_uid);
    records_.insert_or_assign(std::move(key), std::move(record));
}

const CacheRecord* Cache::find(const std::string& endpoint_id,
                               const std::string& uid,
                               const std::string& digest) const {
    auto it = records_.find(cache_key(endpoint_id, uid));
    if (it == records_.end()) return nullptr;
    if (it->second.request_digest != digest) return nullptr;
    return &it->second;
}

std::string request_body(const EndpointConfig& endpoint,
                         const corpus::Question& question) {
    json body;
    body[endpoint.request_shape.nl_field] = question.nl_text;
    body[endpoint.request_shape.language_field] = endpoint.language;
    return body.dump();
}

TgmOutcome fetch_template(const EndpointConfig& endpoint,
                          const corpus::Question& question) {
    SplitUrl url = split_url(endpoint.url);
    httplib::Client client(url.base);
    auto seconds = endpoint.timeout.count() / 1000;
    auto microseconds = (endpoint.timeout.count() % 1000) * 1000;
    client.set_connection_timeout(seconds, microseconds);
    client.set_read_timeout(seconds, microseconds);
    client.set_write_timeout(seconds, microseconds);

    auto result = client.Post(url.path, request_body(endpoint, question),
                              "application/json");
    if (!result)
        return TgmOutcome{HttpFailure{0, httplib::to_string(result.error())}};
    if (result->status != 200)
        return TgmOutcome{HttpFailure{result->status, ""}};
    return parse_response_body(endpoint, result->body);
}

std::map<std::string, TgmOutcome> fetch_all(
    const EndpointConfig& endpoint,
    const std::vector<corpus::Question>& questions, Cache& cache,
    FetchMode mode) {
    std::vector<const corpus::Question*> ordered;
    ordered.reserve(questions.size());
    for (const corpus::Question& q : questions) ordered.push_back(&q);
    std::sort(ordered.begin(), ordered.end(),
              [](const corpus::Question* a, const corpus::Question* b) {
                  return a->uid < b->uid;
              });

    std::map<std::string, TgmOutcome> outcomes;

    if (mode == FetchMode::Replay) {
        std::vector<std::string> missing;
        for (const corpus::Question* q : ordered) {
            std::string digest = util::fnv1a_hex(request_body(endpoint, *q));
            const CacheRecord* hit = cache.find(endpoint.id, q->uid, digest);
            if (hit == nullptr) {
                missing.push_back(q->uid);
                continue;
            }
            outcomes.emplace(q->uid, hit->outcome);
        }
        if (!missing.empty()) {
            std::ostringstream msg;
            msg << "replay cache misses for endpoint '" << endpoint.id
                << "':";
            for (const std::string& uid : missing) msg << ' ' << uid;
            throw CoverageError(msg.str());
        }
        return outcomes;
    }

    // live modes: Record fetches everything, Passthrough only cache misses
    std::vector<const corpus::Question*> to_fetch;
    if (mode == FetchMode::Record) {
        to_fetch = ordered;
    } else {
        for (const corpus::Question* q : ordered) {
            std::string digest = util::fnv1a_hex(request_body(endpoint, *q));
            const CacheRecord* hit = cache.find(endpoint.id, q->uid, digest);
            if (hit != nullptr) {
                outcomes.emplace(q->uid, hit->outcome);
            } else {
                to_fetch.push_back(q);
            }
        }
    }

    std::vector<TgmOutcome> fetched(to_fetch.size(),
                                    TgmOutcome{HttpFailure{0, "unfetched"}});
    std::atomic<std::size_t> next{0};
    std::size_t worker_count = std::min<std::size_t>(
        std::max(endpoint.max_concurrency, 1), std::max<std::size_t>(
                                                   to_fetch.size(), 1));
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= to_fetch.size()) break;
                fetched[i] = fetch_template(endpoint, *to_fetch[i]);
            }
        });
    }
    for (std::thread& t : workers) t.join();

    std::string stamp = now_utc_iso();
    for (std::size_t i = 0; i < to_fetch.size(); ++i) {
        const corpus::Question* q = to_fetch[i];
        outcomes.emplace(q->uid, fetched[i]);
        cache.put(CacheRecord{endpoint.id, q->uid,
                              util::fnv1a_hex(request_body(endpoint, *q)),
                              fetched[i], stamp});
    }
    return outcomes;
}

}  // namespace tgmeval::tgm
