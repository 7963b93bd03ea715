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
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "tgmeval/config.hpp"
#include "tgmeval/criteria.hpp"
#include "tgmeval/report.hpp"
#include "tgmeval/tgm_client.hpp"

namespace tgmeval::cli {

/// Exit codes shared by every subcommand: 0 success, 2 input/schema error,
/// 3 coverage/cache error, 1 internal error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCoverage = 3;

/// Loads the configured datasets, builds the per-family corpora and writes
/// corpus.jsonl plus corpus-stats.json. Nothing is written if any dataset
/// fails to load.
int run_ingest(const config::HarnessConfig& cfg, std::ostream& log);

/// Fills the cache for every (endpoint, question) pair.
int run_fetch(const config::HarnessConfig& cfg, tgm::FetchMode mode,
              std::ostream& log);

/// Evaluates every question against each endpoint's cached outcome and
/// writes verdicts-<endpoint>.jsonl, uid-ordered.
int run_evaluate(const config::HarnessConfig& cfg, std::ostream& log);

struct ReportOptions {
    std::vector<report::Format> formats;              // defaults to text
    std::set<criteria::Criterion> dump_criteria;      // empty = no dump
    bool dump_requested = false;
};

/// Aggregates verdicts into report.{txt,json,csv} and optional
/// false-cases-<endpoint>.jsonl dumps.
int run_report(const config::HarnessConfig& cfg, const ReportOptions& options,
               std::ostream& log);

/// Serves the mock TGM until the process is stopped.
int run_serve_mock(const std::filesystem::path& script_path, int port,
                   std::ostream& log);

}  // namespace tgmeval::cli
