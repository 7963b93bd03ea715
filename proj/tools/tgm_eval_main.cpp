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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tgmeval/cli.hpp"
#include "tgmeval/errors.hpp"

namespace {

using tgmeval::cli::kExitInput;

struct CommonOptions {
    std::string config_path;
    std::string cache_path;
    std::string output_dir;
    int concurrency = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "harness config file (JSON)")
        ->required();
    cmd->add_option("--cache", opts.cache_path, "override cache file path");
    cmd->add_option("--output-dir", opts.output_dir,
                    "override output directory");
    cmd->add_option("--concurrency", opts.concurrency,
                    "override request concurrency");
}

// flags > environment > config file
tgmeval::config::HarnessConfig load_config(const CommonOptions& opts) {
    auto cfg = tgmeval::config::HarnessConfig::load(opts.config_path);
    if (!opts.cache_path.empty()) cfg.cache_path = opts.cache_path;
    if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
    if (opts.concurrency > 0) {
        cfg.concurrency = opts.concurrency;
        for (auto& endpoint : cfg.endpoints)
            endpoint.max_concurrency = opts.concurrency;
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark harness for SPARQL template-generation modules"};
    app.require_subcommand(1);

    CommonOptions ingest_opts;
    CLI::App* ingest = app.add_subcommand(
        "ingest", "load datasets, dedup, normalize and write the corpus");
    add_common(ingest, ingest_opts);

    CommonOptions fetch_opts;
    std::string fetch_mode = "record";
    CLI::App* fetch = app.add_subcommand(
        "fetch", "send every question to the TGM endpoints");
    add_common(fetch, fetch_opts);
    fetch->add_option("--mode", fetch_mode, "record|replay|passthrough")
        ->check(CLI::IsMember({"record", "replay", "passthrough"}));

    CommonOptions eval_opts;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "apply the six criteria to each cached outcome");
    add_common(evaluate, eval_opts);

    CommonOptions report_opts;
    std::vector<std::string> formats;
    std::vector<std::string> dump_criteria;
    bool dump_all = false;
    CLI::App* report = app.add_subcommand(
        "report", "aggregate verdicts into tables and dumps");
    add_common(report, report_opts);
    report->add_option("--format", formats, "text|json|csv (repeatable)")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    report->add_option("--dump-false-cases", dump_criteria,
                       "criteria to dump (slugs, or 'all')");
    report->add_flag("--dump-all", dump_all,
                     "dump false cases for every criterion");

    std::string script_path;
    int mock_port = 0;
    CLI::App* serve_mock = app.add_subcommand(
        "serve-mock", "run the scriptable mock TGM service");
    serve_mock->add_option("--script", script_path, "behavior script (JSON)")
        ->required();
    serve_mock->add_option("--port", mock_port, "port (0 picks a free one)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*ingest)
            return tgmeval::cli::run_ingest(load_config(ingest_opts),
                                            std::cerr);
        if (*fetch) {
            tgmeval::tgm::FetchMode mode =
                fetch_mode == "replay" ? tgmeval::tgm::FetchMode::Replay
                : fetch_mode == "passthrough"
                    ? tgmeval::tgm::FetchMode::Passthrough
                    : tgmeval::tgm::FetchMode::Record;
            return tgmeval::cli::run_fetch(load_config(fetch_opts), mode,
                                           std::cerr);
        }
        if (*evaluate)
            return tgmeval::cli::run_evaluate(load_config(eval_opts),
                                              std::cerr);
        if (*report) {
            tgmeval::cli::ReportOptions options;
            for (const std::string& f : formats) {
                options.formats.push_back(
                    f == "json"  ? tgmeval::report::Format::Json
                    : f == "csv" ? tgmeval::report::Format::Csv
                                 : tgmeval::report::Format::Text);
            }
            for (const std::string& slug : dump_criteria) {
                if (slug == "all") {
                    dump_all = true;
                    continue;
                }
                auto criterion = tgmeval::criteria::criterion_from_slug(slug);
                if (!criterion) {
                    std::cerr << "error: unknown criterion '" << slug << "'\n";
                    return kExitInput;
                }
                options.dump_criteria.insert(*criterion);
                options.dump_requested = true;
            }
            if (dump_all) {
                using tgmeval::criteria::Criterion;
                for (Criterion c :
                     {Criterion::TgmFailure, Criterion::Syntax,
                      Criterion::QuestionType, Criterion::DisconnectedTarget,
                      Criterion::WrongRange, Criterion::DisconnectedTriple})
                    options.dump_criteria.insert(c);
                options.dump_requested = true;
            }
            return tgmeval::cli::run_report(load_config(report_opts), options,
                                            std::cerr);
        }
        if (*serve_mock)
            return tgmeval::cli::run_serve_mock(script_path, mock_port,
                                                std::cerr);
    } catch (const tgmeval::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return tgmeval::cli::kExitInternal;
    }
    return kExitInput;
}
