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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgmeval/normalize.hpp"
#include "tgmeval/sparql/analysis.hpp"
#include "tgmeval/sparql/ast.hpp"
#include "tgmeval/sparql/prefix_env.hpp"

namespace tgmeval::corpus {

enum class DatasetFamily { Qald, LcQuad };
enum class DatasetFormat { QaldJson, LcQuadJson };

std::string family_name(DatasetFamily family);

struct DatasetDescriptor {
    std::string name;  // e.g. "qald-4/multilingual-train"
    DatasetFamily family = DatasetFamily::Qald;
    int order_index = 0;  // monotone across challenge editions
    std::filesystem::path path;
    DatasetFormat format = DatasetFormat::QaldJson;
    bool excluded = false;  // pseudo-query / oversized datasets
    std::string exclusion_reason;
};

struct RawEntry {
    DatasetDescriptor source;
    std::string question_id;
    std::string language;
    std::string nl_text;
    std::string gold_text;
};

struct QuestionClass {
    enum class Kind { YesNo, Factoid, RangeFactoid };
    Kind kind = Kind::Factoid;
    std::optional<sparql::RangeSpec> range;  // engaged iff RangeFactoid
    bool operator==(const QuestionClass&) const = default;
};

struct Question {
    std::string uid;  // "<dataset name>#<question id>", stable
    std::string nl_text;
    std::string gold_text;  // normalized query text
    sparql::QueryAst gold_ast;
    QuestionClass klass;
    DatasetDescriptor provenance;
};

struct SkippedEntry {
    std::string dataset;
    std::string question_id;
    std::string reason;
    std::string detail;
};

struct CorpusStats {
    std::size_t total = 0;
    std::size_t yes_no = 0;
    std::size_t factoid = 0;          // includes range-specified
    std::size_t range_specified = 0;  // subset of factoid
    std::vector<SkippedEntry> skipped;
};

struct LoadResult {
    std::vector<RawEntry> entries;
    std::vector<SkippedEntry> skipped;
};

/// QALD JSON: questions[].id, questions[].question[].{language,string},
/// questions[].query.sparql. One entry per English question string; entries
/// without a SPARQL annotation land in skipped. Throws InputError on missing
/// files, schema mismatches (with the offending path) and excluded datasets.
LoadResult load_qald(const DatasetDescriptor& descriptor);

/// LC-QuAD JSON: array of {_id, corrected_question, sparql_query}; the
/// language is fixed to "en".
LoadResult load_lcquad(const DatasetDescriptor& descriptor);

/// Dedup + normalize + parse + classify. The dedup key is the NL text
/// lowercased, whitespace-collapsed and stripped of trailing ?/. ; among
/// duplicates the entry with the highest order_index wins. Gold queries are
/// rewritten with rules before parsing; parse failures become skipped
/// entries (reason gold-parse-failure).
std::pair<std::vector<Question>, CorpusStats> build_corpus(
    std::vector<RawEntry> entries,
    const std::vector<normalize::RewriteRule>& rules,
    const sparql::PrefixEnv& env = sparql::PrefixEnv::default_env());

/// Ask -> YesNo; Select with explicit limit/offset -> RangeFactoid; plain
/// Select -> Factoid. Modifiers on Ask queries are ignored.
QuestionClass classify(const sparql::QueryAst& gold_ast);

CorpusStats corpus_stats(const std::vector<Question>& questions,
                         std::vector<SkippedEntry> skipped = {});

std::string dedup_key(std::string_view nl_text);

// --- canonical corpus file (one JSON record per line) ---

nlohmann::json question_to_json(const Question& q);
nlohmann::json stats_to_json(const CorpusStats& stats);

void write_corpus(const std::filesystem::path& path,
                  const std::vector<Question>& questions);

/// Reload; gold_ast is re-parsed from the stored text with env.
std::vector<Question> read_corpus(
    const std::filesystem::path& path,
    const sparql::PrefixEnv& env = sparql::PrefixEnv::default_env());

}  // namespace tgmeval::corpus
