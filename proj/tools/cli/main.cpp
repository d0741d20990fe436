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


#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"
#include "common.hpp"

#include "solidarity/error.hpp"
#include "solidarity/io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace solidarity;
  using namespace solidarity::cli;

  CLI::App app{"Solidarity stance analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", SOLIDARITY_VERSION);
  Context ctx;
  std::string report_path;
  app.add_option("--report", report_path, "Write the JSON run report here");
  app.add_flag("-q,--quiet", ctx.quiet, "Do not print results to stdout");
  const auto commands = register_commands(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  ctx.report_path = report_path;

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    if (c.app->parsed()) chosen = &c;
  }
  RunReport report(chosen->app->get_name());
  int code = kOk;
  std::string kind, message;
  try {
    chosen->run(report);
  } catch (const UsageError& e) {
    code = kUsage, kind = "usage", message = e.what();
  } catch (const ParseError& e) {
    code = kData, kind = "parse", message = e.what();
  } catch (const DataError& e) {
    code = kData, kind = "data", message = e.what();
  } catch (const TrainingError& e) {
    code = kData, kind = "training", message = e.what();
  } catch (const EndpointError& e) {
    code = kData, kind = "endpoint", message = e.what();
  } catch (const std::filesystem::filesystem_error& e) {
    code = kData, kind = "io", message = e.what();
  }
  if (code != kOk) std::cerr << "error: " << message << '\n';

  if (!ctx.report_path.empty()) {
    try {
      const auto j = report.finish(code, kind, message);
      if (ctx.report_path.has_parent_path()) {
        std::filesystem::create_directories(ctx.report_path.parent_path());
      }
      io::write_atomic(ctx.report_path, j.dump(2) + "\n");
    } catch (const std::exception& e) {
      std::cerr << "error: cannot write run report: " << e.what() << '\n';
      if (code == kOk) code = kData;
    }
  }
  return code;
}
