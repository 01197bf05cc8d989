// Copyright 2026 The Watchtower Authors
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
#include <string>

namespace watchtower::cli {

/// Exit codes: 0 success, 1 domain failure (validation, import, execution),
/// 2 environment failure (unreadable files, bad configuration, bind errors).
enum ExitCode : int
{
  kSuccess       = 0,
  kDomainFailure = 1,
  kEnvironment   = 2,
};

int cmd_validate(const std::filesystem::path &catena_file, const std::filesystem::path &repo, std::ostream &out,
                 std::ostream &err);

/// Imports the data directory into a fresh in-memory payload store, executes
/// the catena and writes `views/<view>.json`, `indicators.json` and
/// `run.json` below `out_dir`.
int cmd_run(const std::filesystem::path &catena_file, const std::filesystem::path &repo,
            const std::filesystem::path &data_dir, const std::filesystem::path &out_dir, std::ostream &out,
            std::ostream &err);

int cmd_seed(const std::filesystem::path &repo, std::ostream &out, std::ostream &err);

/// Writes the candidate catena document for `plan_file` to `out_file` (stdout
/// when empty) and reports coverage.
int cmd_compose(const std::filesystem::path &plan_file, const std::filesystem::path &repo, const std::string &project,
                const std::filesystem::path &out_file, std::ostream &out, std::ostream &err);

/// Blocks serving HTTP until SIGINT or SIGTERM.
int cmd_serve(const std::filesystem::path &config_file, std::ostream &out, std::ostream &err);

/// Command-line entry point.
int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err);

}  // namespace watchtower::cli
