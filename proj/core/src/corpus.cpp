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

#include "tgmeval/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "tgmeval/errors.hpp"
#include "tgmeval/sparql/parser.hpp"
#include "tgmeval/util.hpp"

namespace tgmeval::corpus {

using nlohmann::json;

namespace {

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open dataset file: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in " + path.string() + ": " + e.what());
    }
    return doc;
}

std::string id_to_string(const json& id) {
    if (id.is_string()) return id.get<std::string>();
    if (id.is_number_integer())
        return std::to_string(id.get<long long>());
    if (id.is_number()) return id.dump();
    return id.dump();
}

void require_not_excluded(const DatasetDescriptor& d) {
    if (d.excluded) {
        throw InputError("dataset '" + d.name + "' is excluded by policy: " +
                         (d.exclusion_reason.empty() ? "unsuitable queries"
                                                     : d.exclusion_reason));
    }
}

}  // namespace

std::string family_name(DatasetFamily family) {
    return family == DatasetFamily::Qald ? "qald" : "lc-quad";
}

LoadResult load_qald(const DatasetDescriptor& descriptor) {
    require_not_excluded(descriptor);
    json doc = load_json_file(descriptor.path);
    if (!doc.is_object() || !doc.contains("questions") ||
        !doc["questions"].is_array()) {
        throw InputError("QALD schema mismatch in " +
                         descriptor.path.string() +
                         ": expected object with a questions array");
    }
    LoadResult result;
    std::size_t index = 0;
    for (const json& q : doc["questions"]) {
        std::string where =
            descriptor.path.string() + ": questions[" + std::to_string(index) +
            "]";
        ++index;
        if (!q.is_object() || !q.contains("id"))
            throw InputError("QALD schema mismatch at " + where +
                             ": missing id");
        std::string id = id_to_string(q["id"]);
        if (!q.contains("question") || !q["question"].is_array())
            throw InputError("QALD schema mismatch at " + where +
                             ".question: expected array");

        std::string sparql_text;
        if (q.contains("query") && q["query"].is_object() &&
            q["query"].contains("sparql") && q["query"]["sparql"].is_string())
            sparql_text = q["query"]["sparql"].get<std::string>();

        bool any_english = false;
        for (const json& lq : q["question"]) {
            if (!lq.is_object()) continue;
            std::string language = lq.value("language", "");
            std::string text = lq.value("string", "");
            if (language != "en" || text.empty()) continue;
            any_english = true;
            if (sparql_text.empty()) {
                result.skipped.push_back(SkippedEntry{
                    descriptor.name, id, "missing-sparql",
                    "question has no SPARQL annotation"});
                break;
            }
            result.entries.push_back(RawEntry{descriptor, id, "en",
                                              std::move(text), sparql_text});
        }
        (void)any_english;
    }
    return result;
}

LoadResult load_lcquad(const DatasetDescriptor& descriptor) {
    require_not_excluded(descriptor);
    json doc = load_json_file(descriptor.path);
    if (!doc.is_array())
        throw InputError("LC-QuAD schema mismatch in " +
                         descriptor.path.string() + ": expected array");
    LoadResult result;
    std::size_t index = 0;
    for (const json& item : doc) {
        std::string where = descriptor.path.string() + ": [" +
                            std::to_string(index) + "]";
        ++index;
        if (!item.is_object() || !item.contains("_id"))
            throw InputError("LC-QuAD schema mismatch at " + where +
                             ": missing _id");
        std::string id = id_to_string(item["_id"]);
        std::string text = item.value("corrected_question", "");
        std::string query = item.value("sparql_query", "");
        if (text.empty()) {
            result.skipped.push_back(SkippedEntry{descriptor.name, id,
                                                  "missing-question", ""});
            continue;
        }
        if (query.empty()) {
            result.skipped.push_back(SkippedEntry{descriptor.name, id,
                                                  "missing-sparql", ""});
            continue;
        }
        result.entries.push_back(
            RawEntry{descriptor, id, "en", std::move(text), std::move(query)});
    }
    return result;
}

std::string dedup_key(std::string_view nl_text) {
    std::string key;
    key.reserve(nl_text.size());
    bool pending_space = false;
    for (char c : nl_text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !key.empty();
            continue;
        }
        if (pending_space) {
            key += ' ';
            pending_space = false;
        }
        key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    while (!key.empty() &&
           (key.back() == '?' || key.back() == '.' || key.back() == ' '))
        key.pop_back();
    return key;
}

QuestionClass classify(const sparql::QueryAst& gold_ast) {
    QuestionClass klass;
    if (gold_ast.form == sparql::QueryForm::Ask) {
        // limit/offset on an ask query carries no range meaning
        klass.kind = QuestionClass::Kind::YesNo;
        return klass;
    }
    if (auto range = sparql::range_of(gold_ast)) {
        klass.kind = QuestionClass::Kind::RangeFactoid;
        klass.range = *range;
        return klass;
    }
    klass.kind = QuestionClass::Kind::Factoid;
    return klass;
}

std::pair<std::vector<Question>, CorpusStats> build_corpus(
    std::vector<RawEntry> entries,
    const std::vector<normalize::RewriteRule>& rules,
    const sparql::PrefixEnv& env) {
    // arrival order must not matter
    std::stable_sort(entries.begin(), entries.end(),
                     [](const RawEntry& a, const RawEntry& b) {
                         if (a.source.order_index != b.source.order_index)
                             return a.source.order_index <
                                    b.source.order_index;
                         if (a.source.name != b.source.name)
                             return a.source.name < b.source.name;
                         return a.question_id < b.question_id;
                     });

    // newest wins: later entries in sort order replace earlier ones
    std::map<std::string, const RawEntry*> by_key;
    for (const RawEntry& entry : entries) by_key[dedup_key(entry.nl_text)] = &entry;

    std::vector<const RawEntry*> kept;
    kept.reserve(by_key.size());
    for (const auto& [key, entry] : by_key) kept.push_back(entry);
    std::sort(kept.begin(), kept.end(),
              [](const RawEntry* a, const RawEntry* b) {
                  if (a->source.name != b->source.name)
                      return a->source.name < b->source.name;
                  return a->question_id < b->question_id;
              });

    std::vector<Question> questions;
    std::vector<SkippedEntry> skipped;
    for (const RawEntry* entry : kept) {
        auto normalized = normalize::normalize_query(entry->gold_text, rules);
        auto parsed = sparql::parse_query(normalized.text, env);
        if (!sparql::parse_ok(parsed)) {
            const sparql::ParseError& err = sparql::parse_error(parsed);
            std::ostringstream detail;
            detail << err.line << ":" << err.column << " " << err.message;
            skipped.push_back(SkippedEntry{entry->source.name,
                                           entry->question_id,
                                           "gold-parse-failure", detail.str()});
            continue;
        }
        Question q;
        q.uid = entry->source.name + "#" + entry->question_id;
        q.nl_text = entry->nl_text;
        q.gold_text = normalized.text;
        q.gold_ast = sparql::parsed_ast(parsed);
        q.klass = classify(q.gold_ast);
        q.provenance = entry->source;
        questions.push_back(std::move(q));
    }
    std::sort(questions.begin(), questions.end(),
              [](const Question& a, const Question& b) { return a.uid < b.uid; });

    CorpusStats stats = corpus_stats(questions, std::move(skipped));
    return {std::move(questions), std::move(stats)};
}

CorpusStats corpus_stats(const std::vector<Question>& questions,
                         std::vector<SkippedEntry> skipped) {
    CorpusStats stats;
    stats.total = questions.size();
    for (const Question& q : questions) {
        switch (q.klass.kind) {
            case QuestionClass::Kind::YesNo:
                ++stats.yes_no;
                break;
            case QuestionClass::Kind::RangeFactoid:
                ++stats.range_specified;
                ++stats.factoid;
                break;
            case QuestionClass::Kind::Factoid:
                ++stats.factoid;
                break;
        }
    }
    stats.skipped = std::move(skipped);
    return stats;
}

namespace {

json class_to_json(const QuestionClass& klass) {
    json out;
    switch (klass.kind) {
        case QuestionClass::Kind::YesNo:
            out["kind"] = "yes-no";
            break;
        case QuestionClass::Kind::Factoid:
            out["kind"] = "factoid";
            break;
        case QuestionClass::Kind::RangeFactoid:
            out["kind"] = "range-factoid";
            if (klass.range->length) {
                out["length"] = *klass.range->length;
            } else {
                out["length"] = nullptr;
            }
            out["start"] = klass.range->start;
            break;
    }
    return out;
}

QuestionClass class_from_json(const json& j) {
    QuestionClass klass;
    std::string kind = j.value("kind", "factoid");
    if (kind == "yes-no") {
        klass.kind = QuestionClass::Kind::YesNo;
    } else if (kind == "range-factoid") {
        klass.kind = QuestionClass::Kind::RangeFactoid;
        sparql::RangeSpec range;
        if (j.contains("length") && !j["length"].is_null())
            range.length = j["length"].get<std::uint64_t>();
        range.start = j.value("start", std::uint64_t{1});
        klass.range = range;
    }
    return klass;
}

}  // namespace

json question_to_json(const Question& q) {
    json out;
    out["uid"] = q.uid;
    out["nl"] = q.nl_text;
    out["gold"] = q.gold_text;
    out["class"] = class_to_json(q.klass);
    out["provenance"] = {
        {"dataset", q.provenance.name},
        {"family", family_name(q.provenance.family)},
        {"order_index", q.provenance.order_index},
    };
    return out;
}

json stats_to_json(const CorpusStats& stats) {
    json skipped = json::array();
    for (const auto& s : stats.skipped) {
        skipped.push_back({{"dataset", s.dataset},
                           {"question_id", s.question_id},
                           {"reason", s.reason},
                           {"detail", s.detail}});
    }
    json out;
    out["total"] = stats.total;
    out["yes_no"] = stats.yes_no;
    out["factoid"] = stats.factoid;
    out["range_specified"] = stats.range_specified;
    out["yes_no_pct"] = util::percent_string(stats.yes_no, stats.total);
    out["range_specified_pct_of_factoid"] =
        util::percent_string(stats.range_specified, stats.factoid);
    out["skipped_count"] = stats.skipped.size();
    out["skipped"] = std::move(skipped);
    return out;
}

void write_corpus(const std::filesystem::path& path,
                  const std::vector<Question>& questions) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write corpus file: " + path.string());
    for (const Question& q : questions) out << question_to_json(q).dump() << '\n';
}

std::vector<Question> read_corpus(const std::filesystem::path& path,
                                  const sparql::PrefixEnv& env) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open corpus file: " + path.string());
    std::vector<Question> questions;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw InputError("corpus file " + path.string() + " line " +
                             std::to_string(line_no) + ": " + e.what());
        }
        Question q;
        q.uid = j.value("uid", "");
        q.nl_text = j.value("nl", "");
        q.gold_text = j.value("gold", "");
        if (q.uid.empty() || q.gold_text.empty())
            throw InputError("corpus file " + path.string() + " line " +
                             std::to_string(line_no) +
                             ": uid and gold are required");
        auto parsed = sparql::parse_query(q.gold_text, env);
        if (!sparql::parse_ok(parsed))
            throw InputError("corpus file " + path.string() + " line " +
                             std::to_string(line_no) +
                             ": stored gold query no longer parses: " +
                             sparql::parse_error(parsed).message);
        q.gold_ast = sparql::parsed_ast(parsed);
        q.klass = j.contains("class") ? class_from_json(j["class"])
                                      : classify(q.gold_ast);
        if (j.contains("provenance")) {
            const json& p = j["provenance"];
            q.provenance.name = p.value("dataset", "");
            q.provenance.order_index = p.value("order_index", 0);
            q.provenance.family = p.value("family", "qald") == "lc-quad"
                                      ? DatasetFamily::LcQuad
                                      : DatasetFamily::Qald;
        }
        questions.push_back(std::move(q));
    }
    return questions;
}

}  // namespace tgmeval::corpus
