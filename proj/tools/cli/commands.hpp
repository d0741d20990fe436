// Copyright 2026 The Solidarity Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "CLI11.hpp"

#include "config.hpp"
#include "report.hpp"

namespace solidarity::cli {

struct Context {
  std::filesystem::path report_path;  // --report, or a command default
  bool quiet = false;
};

struct Command {
  CLI::App* app = nullptr;
  std::function<void(RunReport&)> run;
};

// Adds every subcommand to `app`. Option storage lives inside the returned
// callbacks; `ctx` must outlive them.
std::vector<Command> register_commands(CLI::App& app, Context& ctx);

// Runs ingest, aggregate, splits, candidate training, self-labeling,
// augmentation, evaluation, ensemble prediction and trends in one process.
// Artifacts go to `out_dir`.
void run_pipeline(const RunConfig& config, const std::filesystem::path& out_dir,
                  RunReport& report);

}  // namespace solidarity::cli
