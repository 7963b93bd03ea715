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

#include "tgmeval/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <thread>

#include "tgmeval/errors.hpp"
#include "tgmeval/mockstub.hpp"

namespace tgmeval::cli {

using nlohmann::json;

namespace {

int guard(std::ostream& log, const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const InputError& e) {
        log << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const CoverageError& e) {
        log << "error: " << e.what() << '\n';
        return kExitCoverage;
    } catch (const std::exception& e) {
        log << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

corpus::LoadResult load_dataset(const corpus::DatasetDescriptor& d) {
    return d.format == corpus::DatasetFormat::QaldJson ? corpus::load_qald(d)
                                                       : corpus::load_lcquad(d);
}

std::vector<criteria::Verdict> read_verdicts(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open verdicts file: " + path.string());
    std::vector<criteria::Verdict> verdicts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            verdicts.push_back(criteria::verdict_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw InputError("verdicts file " + path.string() + " line " +
                             std::to_string(line_no) + ": " + e.what());
        }
    }
    return verdicts;
}

}  // namespace

int run_ingest(const config::HarnessConfig& cfg, std::ostream& log) {
    return guard(log, [&] {
        if (cfg.datasets.empty())
            throw InputError("config lists no datasets to ingest");

        // load everything before writing anything
        std::map<corpus::DatasetFamily, std::vector<corpus::RawEntry>>
            entries_by_family;
        std::vector<corpus::SkippedEntry> load_skips;
        std::vector<std::string> load_errors;
        for (const corpus::DatasetDescriptor& d : cfg.datasets) {
            if (d.excluded) {
                load_skips.push_back(corpus::SkippedEntry{
                    d.name, "", "excluded-by-policy",
                    d.exclusion_reason.empty() ? "unsuitable queries"
                                               : d.exclusion_reason});
                continue;
            }
            try {
                corpus::LoadResult result = load_dataset(d);
                auto& bucket = entries_by_family[d.family];
                bucket.insert(bucket.end(), result.entries.begin(),
                              result.entries.end());
                load_skips.insert(load_skips.end(), result.skipped.begin(),
                                  result.skipped.end());
            } catch (const InputError& e) {
                load_errors.push_back(e.what());
            }
        }
        if (!load_errors.empty()) {
            for (const std::string& err : load_errors) log << err << '\n';
            throw InputError(std::to_string(load_errors.size()) +
                             " dataset(s) failed to load; no output written");
        }

        std::vector<corpus::Question> all_questions;
        json stats_doc;
        json families = json::object();
        corpus::CorpusStats combined;
        for (auto& [family, entries] : entries_by_family) {
            auto [questions, stats] =
                corpus::build_corpus(std::move(entries), cfg.rewrite_rules,
                                     cfg.prefix_env);
            families[corpus::family_name(family)] =
                corpus::stats_to_json(stats);
            combined.total += stats.total;
            combined.yes_no += stats.yes_no;
            combined.factoid += stats.factoid;
            combined.range_specified += stats.range_specified;
            combined.skipped.insert(combined.skipped.end(),
                                    stats.skipped.begin(),
                                    stats.skipped.end());
            all_questions.insert(all_questions.end(),
                                 std::make_move_iterator(questions.begin()),
                                 std::make_move_iterator(questions.end()));
        }
        combined.skipped.insert(combined.skipped.end(), load_skips.begin(),
                                load_skips.end());
        std::sort(all_questions.begin(), all_questions.end(),
                  [](const corpus::Question& a, const corpus::Question& b) {
                      return a.uid < b.uid;
                  });

        std::filesystem::create_directories(cfg.output_dir);
        corpus::write_corpus(cfg.corpus_file(), all_questions);
        stats_doc["families"] = std::move(families);
        stats_doc["combined"] = corpus::stats_to_json(combined);
        std::ofstream stats_out(cfg.stats_file());
        if (!stats_out)
            throw InputError("cannot write stats file: " +
                             cfg.stats_file().string());
        stats_out << stats_doc.dump(2) << '\n';

        log << "ingested " << all_questions.size() << " questions ("
            << combined.skipped.size() << " skipped) -> "
            << cfg.corpus_file().string() << '\n';
    });
}

int run_fetch(const config::HarnessConfig& cfg, tgm::FetchMode mode,
              std::ostream& log) {
    return guard(log, [&] {
        if (cfg.endpoints.empty())
            throw InputError("config lists no endpoints to fetch from");
        std::vector<corpus::Question> questions =
            corpus::read_corpus(cfg.corpus_file(), cfg.prefix_env);
        tgm::Cache cache = tgm::Cache::load(cfg.cache_path);
        for (const tgm::EndpointConfig& endpoint : cfg.endpoints) {
            auto outcomes = tgm::fetch_all(endpoint, questions, cache, mode);
            log << "endpoint '" << endpoint.id << "': " << outcomes.size()
                << " outcomes\n";
        }
        if (mode != tgm::FetchMode::Replay) {
            if (cfg.cache_path.has_parent_path())
                std::filesystem::create_directories(
                    cfg.cache_path.parent_path());
            cache.save(cfg.cache_path);
            log << "cache written to " << cfg.cache_path.string() << '\n';
        }
    });
}

int run_evaluate(const config::HarnessConfig& cfg, std::ostream& log) {
    return guard(log, [&] {
        if (cfg.endpoints.empty())
            throw InputError("config lists no endpoints to evaluate");
        std::vector<corpus::Question> questions =
            corpus::read_corpus(cfg.corpus_file(), cfg.prefix_env);
        std::map<std::string, const corpus::Question*> by_uid;
        for (const corpus::Question& q : questions) by_uid[q.uid] = &q;
        tgm::Cache cache = tgm::Cache::load(cfg.cache_path);
        std::filesystem::create_directories(cfg.output_dir);
        for (const tgm::EndpointConfig& endpoint : cfg.endpoints) {
            // replay: the cache must already cover the corpus
            auto outcomes = tgm::fetch_all(endpoint, questions, cache,
                                           tgm::FetchMode::Replay);
            std::ofstream out(cfg.verdicts_file(endpoint.id));
            if (!out)
                throw InputError("cannot write verdicts file: " +
                                 cfg.verdicts_file(endpoint.id).string());
            std::size_t good = 0;
            for (const auto& [uid, outcome] : outcomes) {
                criteria::Verdict verdict = criteria::evaluate_one(
                    uid, by_uid.at(uid)->gold_ast, outcome, cfg.prefix_env);
                if (verdict.good) ++good;
                out << criteria::verdict_to_json(verdict).dump() << '\n';
            }
            log << "endpoint '" << endpoint.id << "': " << good << "/"
                << outcomes.size() << " good -> "
                << cfg.verdicts_file(endpoint.id).string() << '\n';
        }
    });
}

int run_report(const config::HarnessConfig& cfg, const ReportOptions& options,
               std::ostream& log) {
    return guard(log, [&] {
        if (cfg.endpoints.empty())
            throw InputError("config lists no endpoints to report on");
        std::vector<corpus::Question> questions =
            corpus::read_corpus(cfg.corpus_file(), cfg.prefix_env);

        report::Report rep;
        rep.corpus_summary = corpus::corpus_stats(questions);
        std::map<std::string, std::vector<criteria::Verdict>> all_verdicts;
        for (const tgm::EndpointConfig& endpoint : cfg.endpoints) {
            auto verdicts = read_verdicts(cfg.verdicts_file(endpoint.id));
            report::TgmReport tgm_report;
            tgm_report.tgm_id = endpoint.id;
            tgm_report.aggregate = report::aggregate(verdicts);
            tgm_report.breakdown = report::class_breakdown(verdicts, questions);
            rep.tgms.push_back(std::move(tgm_report));
            all_verdicts.emplace(endpoint.id, std::move(verdicts));
        }

        std::filesystem::create_directories(cfg.output_dir);
        std::vector<report::Format> formats = options.formats;
        if (formats.empty()) formats.push_back(report::Format::Text);
        for (report::Format format : formats) {
            const char* name = format == report::Format::Text   ? "report.txt"
                               : format == report::Format::Json ? "report.json"
                                                                : "report.csv";
            std::filesystem::path path = cfg.output_dir / name;
            std::ofstream out(path);
            if (!out)
                throw InputError("cannot write report file: " + path.string());
            report::emit(rep, format, out);
            log << "wrote " << path.string() << '\n';
            if (format == report::Format::Text) report::emit(rep, format, std::cout);
        }

        if (options.dump_requested) {
            for (const auto& [endpoint_id, verdicts] : all_verdicts) {
                auto cases = report::dump_false_cases(verdicts, questions,
                                                      options.dump_criteria);
                std::filesystem::path path =
                    cfg.output_dir / ("false-cases-" + endpoint_id + ".jsonl");
                std::ofstream out(path);
                if (!out)
                    throw InputError("cannot write false-case dump: " +
                                     path.string());
                for (const report::FalseCase& fc : cases)
                    out << report::false_case_to_json(fc).dump() << '\n';
                log << "wrote " << path.string() << " (" << cases.size()
                    << " cases)\n";
            }
        }
    });
}

int run_serve_mock(const std::filesystem::path& script_path, int port,
                   std::ostream& log) {
    return guard(log, [&] {
        std::ifstream in(script_path);
        if (!in)
            throw InputError("cannot open mock script: " +
                             script_path.string());
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw InputError("invalid JSON in mock script " +
                             script_path.string() + ": " + e.what());
        }
        mock::BehaviorScript script = mock::BehaviorScript::from_json(doc);
        auto server = mock::serve(script, port);
        log << "mock TGM listening on " << server->url() << '\n' << std::flush;
        for (;;) std::this_thread::sleep_for(std::chrono::seconds(1));
    });
}

}  // namespace tgmeval::cli
