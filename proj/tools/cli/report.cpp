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


#include "report.hpp"

#include "solidarity/io.hpp"
#include "solidarity/timestamp.hpp"

#ifndef SOLIDARITY_VERSION
#define SOLIDARITY_VERSION "0.0.0"
#endif

namespace solidarity::cli {

using nlohmann::ordered_json;

std::string now_utc() {
  return format_timestamp(
      std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

RunReport::RunReport(std::string command)
    : command_(std::move(command)), started_at_(now_utc()) {}

void RunReport::seed(const std::string& name, std::uint64_t value) {
  seeds_[name] = value;
}

void RunReport::parameter(const std::string& name, ordered_json value) {
  parameters_[name] = std::move(value);
}

void RunReport::input(const std::filesystem::path& path) {
  inputs_.push_back({{"path", path.string()},
                     {"sha256", io::sha256_file(path)},
                     {"bytes", std::filesystem::file_size(path)}});
}

void RunReport::output(const std::filesystem::path& path) {
  outputs_.push_back({{"path", path.string()},
                      {"sha256", io::sha256_file(path)},
                      {"bytes", std::filesystem::file_size(path)}});
}

void RunReport::metric(const std::string& name, ordered_json value) {
  metrics_[name] = std::move(value);
}

void RunReport::warning(std::string message) {
  warnings_.push_back(std::move(message));
}

void RunReport::note(std::string message) { notes_.push_back(std::move(message)); }

ordered_json RunReport::finish(int exit_code, const std::string& error_kind,
                               const std::string& error_message) const {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = command_;
  j["version"] = SOLIDARITY_VERSION;
  j["started_at"] = started_at_;
  j["finished_at"] = now_utc();
  j["exit_code"] = exit_code;
  j["seeds"] = seeds_;
  j["parameters"] = parameters_;
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  j["metrics"] = metrics_;
  j["warnings"] = warnings_;
  j["notes"] = notes_;
  if (error_kind.empty()) {
    j["error"] = nullptr;
  } else {
    j["error"] = {{"kind", error_kind}, {"message", error_message}};
  }
  return j;
}

}  // namespace solidarity::cli
