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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgmeval/corpus.hpp"
#include "tgmeval/criteria.hpp"

namespace tgmeval::report {

/// First-error counts; mutually exclusive buckets, good + sum = total.
struct CriterionCounts {
    std::array<std::size_t, 6> counts{};  // index = ordinal - 1
    std::size_t good = 0;
    std::size_t total = 0;

    std::size_t at(criteria::Criterion c) const {
        return counts[static_cast<std::size_t>(c) - 1];
    }
};

/// Ratios over the full question count, kept as exact fractions.
struct RatioBlock {
    std::size_t critical_count = 0;  // criteria 1-4
    std::size_t notice_count = 0;    // criteria 5-6
    std::size_t total = 0;

    double critical_ratio() const {
        return total ? static_cast<double>(critical_count) / total : 0.0;
    }
    double notice_ratio() const {
        return total ? static_cast<double>(notice_count) / total : 0.0;
    }
    std::string critical_pct() const;  // one decimal, round-half-up
    std::string notice_pct() const;
};

struct AggregateResult {
    CriterionCounts counts;
    RatioBlock ratios;
};

/// Throws InputError on duplicate uids; asserts conservation
/// (good + per-criterion counts == total).
AggregateResult aggregate(const std::vector<criteria::Verdict>& verdicts);

/// First-error counts split by gold question class, with the derived rates
/// the summary calls out. Throws InputError for verdict uids missing from
/// the corpus.
struct ClassCell {
    std::size_t total = 0;
    std::array<std::size_t, 6> counts{};
    std::size_t good = 0;
};

struct ClassBreakdown {
    ClassCell yes_no;
    ClassCell factoid;        // range-specified questions excluded
    ClassCell range_factoid;

    /// Question-type first errors among factoid golds (incl. range), "n/a"
    /// when there are none.
    std::string question_type_rate_among_factoid() const;
    /// Wrong-range first errors among range-specified golds.
    std::string wrong_range_rate_among_range_specified() const;
};

ClassBreakdown class_breakdown(const std::vector<criteria::Verdict>& verdicts,
                               const std::vector<corpus::Question>& corpus);

struct TgmReport {
    std::string tgm_id;
    AggregateResult aggregate;
    ClassBreakdown breakdown;
};

struct Report {
    std::vector<TgmReport> tgms;
    corpus::CorpusStats corpus_summary;
};

enum class Format { Text, Json, Csv };

/// Deterministic output: identical inputs yield byte-identical bytes.
void emit(const Report& report, Format format, std::ostream& out);

/// Developer-facing dump of non-good cases, ordered by uid.
struct FalseCase {
    std::string uid;
    std::string nl_text;
    std::string gold_text;
    std::optional<std::string> template_text;
    criteria::Verdict verdict;
};

std::vector<FalseCase> dump_false_cases(
    const std::vector<criteria::Verdict>& verdicts,
    const std::vector<corpus::Question>& corpus,
    const std::set<criteria::Criterion>& filter);

nlohmann::json false_case_to_json(const FalseCase& fc);

}  // namespace tgmeval::report
