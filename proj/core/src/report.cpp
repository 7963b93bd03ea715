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

#include "tgmeval/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "tgmeval/errors.hpp"
#include "tgmeval/util.hpp"

namespace tgmeval::report {

using criteria::Criterion;
using criteria::Verdict;
using nlohmann::json;

namespace {

constexpr std::array<Criterion, 6> kOrderedCriteria = {
    Criterion::TgmFailure,         Criterion::Syntax,
    Criterion::QuestionType,       Criterion::DisconnectedTarget,
    Criterion::WrongRange,         Criterion::DisconnectedTriple,
};

}  // namespace

std::string RatioBlock::critical_pct() const {
    return util::percent_string(critical_count, total);
}
std::string RatioBlock::notice_pct() const {
    return util::percent_string(notice_count, total);
}

AggregateResult aggregate(const std::vector<Verdict>& verdicts) {
    std::set<std::string> uids;
    AggregateResult result;
    result.counts.total = verdicts.size();
    result.ratios.total = verdicts.size();
    for (const Verdict& v : verdicts) {
        if (!uids.insert(v.question_uid).second)
            throw InputError("duplicate verdict uid: " + v.question_uid);
        if (v.good) {
            ++result.counts.good;
            continue;
        }
        Criterion c = v.first_error->criterion;
        ++result.counts.counts[static_cast<std::size_t>(c) - 1];
        if (criteria::severity_of(c) == criteria::Severity::Critical) {
            ++result.ratios.critical_count;
        } else {
            ++result.ratios.notice_count;
        }
    }
    std::size_t sum = result.counts.good;
    for (std::size_t c : result.counts.counts) sum += c;
    if (sum != result.counts.total)
        throw std::logic_error("criterion counts do not conserve totals");
    return result;
}

std::string ClassBreakdown::question_type_rate_among_factoid() const {
    std::size_t qt = factoid.counts[2] + range_factoid.counts[2];
    std::size_t denom = factoid.total + range_factoid.total;
    return util::percent_string(qt, denom);
}

std::string ClassBreakdown::wrong_range_rate_among_range_specified() const {
    return util::percent_string(range_factoid.counts[4], range_factoid.total);
}

ClassBreakdown class_breakdown(const std::vector<Verdict>& verdicts,
                               const std::vector<corpus::Question>& corpus) {
    std::map<std::string, const corpus::Question*> by_uid;
    for (const corpus::Question& q : corpus) by_uid[q.uid] = &q;

    ClassBreakdown breakdown;
    for (const Verdict& v : verdicts) {
        auto it = by_uid.find(v.question_uid);
        if (it == by_uid.end())
            throw InputError("verdict uid not in corpus: " + v.question_uid);
        ClassCell* cell = nullptr;
        switch (it->second->klass.kind) {
            case corpus::QuestionClass::Kind::YesNo:
                cell = &breakdown.yes_no;
                break;
            case corpus::QuestionClass::Kind::Factoid:
                cell = &breakdown.factoid;
                break;
            case corpus::QuestionClass::Kind::RangeFactoid:
                cell = &breakdown.range_factoid;
                break;
        }
        ++cell->total;
        if (v.good) {
            ++cell->good;
        } else {
            ++cell->counts[static_cast<std::size_t>(
                               v.first_error->criterion) -
                           1];
        }
    }
    return breakdown;
}

namespace {

json cell_to_json(const ClassCell& cell) {
    json counts;
    for (std::size_t i = 0; i < 6; ++i)
        counts[criteria::criterion_slug(kOrderedCriteria[i])] = cell.counts[i];
    return json{{"total", cell.total},
                {"good", cell.good},
                {"first_errors", std::move(counts)}};
}

json tgm_to_json(const TgmReport& tgm) {
    json counts;
    for (std::size_t i = 0; i < 6; ++i) {
        counts[criteria::criterion_slug(kOrderedCriteria[i])] =
            tgm.aggregate.counts.counts[i];
    }
    const RatioBlock& r = tgm.aggregate.ratios;
    json out;
    out["tgm"] = tgm.tgm_id;
    out["total"] = tgm.aggregate.counts.total;
    out["good"] = tgm.aggregate.counts.good;
    out["first_errors"] = std::move(counts);
    out["ratios"] = {
        {"critical_count", r.critical_count},
        {"notice_count", r.notice_count},
        {"total", r.total},
        {"critical_pct", r.critical_pct()},
        {"notice_pct", r.notice_pct()},
    };
    out["by_class"] = {
        {"yes_no", cell_to_json(tgm.breakdown.yes_no)},
        {"factoid", cell_to_json(tgm.breakdown.factoid)},
        {"range_factoid", cell_to_json(tgm.breakdown.range_factoid)},
        {"question_type_rate_among_factoid",
         tgm.breakdown.question_type_rate_among_factoid()},
        {"wrong_range_rate_among_range_specified",
         tgm.breakdown.wrong_range_rate_among_range_specified()},
    };
    return out;
}

void emit_text(const Report& report, std::ostream& out) {
    const corpus::CorpusStats& stats = report.corpus_summary;
    out << "TGM evaluation report\n";
    out << "Corpus: " << stats.total << " questions (" << stats.yes_no
        << " yes/no, " << stats.factoid << " factoid of which "
        << stats.range_specified << " range-specified";
    if (!stats.skipped.empty()) out << "; " << stats.skipped.size() << " skipped";
    out << ")\n\n";

    out << std::left << std::setw(14) << "TGM";
    for (Criterion c : kOrderedCriteria)
        out << std::right << std::setw(14) << criteria::criterion_label(c);
    out << std::right << std::setw(14) << "Good" << '\n';
    for (const TgmReport& tgm : report.tgms) {
        out << std::left << std::setw(14) << tgm.tgm_id;
        for (std::size_t i = 0; i < 6; ++i)
            out << std::right << std::setw(14) << tgm.aggregate.counts.counts[i];
        out << std::right << std::setw(14) << tgm.aggregate.counts.good << '\n';
    }
    out << '\n';
    for (const TgmReport& tgm : report.tgms) {
        const RatioBlock& r = tgm.aggregate.ratios;
        out << tgm.tgm_id << ": critical " << r.critical_count << "/"
            << r.total << " (" << r.critical_pct() << "%), notice "
            << r.notice_count << "/" << r.total << " (" << r.notice_pct()
            << "%)\n";
        out << tgm.tgm_id << ": question-type errors among factoid "
            << tgm.breakdown.question_type_rate_among_factoid()
            << "%, wrong-range among range-specified "
            << tgm.breakdown.wrong_range_rate_among_range_specified() << "%\n";
    }
}

void emit_json(const Report& report, std::ostream& out) {
    json doc;
    doc["corpus"] = corpus::stats_to_json(report.corpus_summary);
    json tgms = json::array();
    for (const TgmReport& tgm : report.tgms) tgms.push_back(tgm_to_json(tgm));
    doc["tgms"] = std::move(tgms);
    out << doc.dump(2) << '\n';
}

void emit_csv(const Report& report, std::ostream& out) {
    out << "tgm,criterion,count\n";
    for (const TgmReport& tgm : report.tgms) {
        for (std::size_t i = 0; i < 6; ++i) {
            out << tgm.tgm_id << ','
                << criteria::criterion_slug(kOrderedCriteria[i]) << ','
                << tgm.aggregate.counts.counts[i] << '\n';
        }
    }
}

}  // namespace

void emit(const Report& report, Format format, std::ostream& out) {
    switch (format) {
        case Format::Text: emit_text(report, out); break;
        case Format::Json: emit_json(report, out); break;
        case Format::Csv: emit_csv(report, out); break;
    }
}

std::vector<FalseCase> dump_false_cases(
    const std::vector<Verdict>& verdicts,
    const std::vector<corpus::Question>& corpus,
    const std::set<Criterion>& filter) {
    std::map<std::string, const corpus::Question*> by_uid;
    for (const corpus::Question& q : corpus) by_uid[q.uid] = &q;

    std::vector<FalseCase> cases;
    for (const Verdict& v : verdicts) {
        if (v.good) continue;
        if (!filter.count(v.first_error->criterion)) continue;
        FalseCase fc;
        fc.uid = v.question_uid;
        auto it = by_uid.find(v.question_uid);
        if (it != by_uid.end()) {
            fc.nl_text = it->second->nl_text;
            fc.gold_text = it->second->gold_text;
        }
        fc.template_text = v.template_text;
        fc.verdict = v;
        cases.push_back(std::move(fc));
    }
    std::sort(cases.begin(), cases.end(),
              [](const FalseCase& a, const FalseCase& b) { return a.uid < b.uid; });
    return cases;
}

json false_case_to_json(const FalseCase& fc) {
    json out;
    out["uid"] = fc.uid;
    out["nl"] = fc.nl_text;
    out["gold"] = fc.gold_text;
    out["template"] =
        fc.template_text ? json(*fc.template_text) : json(nullptr);
    out["verdict"] = criteria::verdict_to_json(fc.verdict);
    return out;
}

}  // namespace tgmeval::report
