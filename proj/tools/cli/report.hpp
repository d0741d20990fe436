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

#include <chrono>
#include <filesystem>
#include <string>

#include "json.hpp"

namespace solidarity::cli {

inline constexpr const char* kReportSchema = "solidarity-run-report/1";

// Machine-readable record of one command invocation.
class RunReport {
 public:
  explicit RunReport(std::string command);

  void seed(const std::string& name, std::uint64_t value);
  void parameter(const std::string& name, nlohmann::ordered_json value);
  void input(const std::filesystem::path& path);
  void output(const std::filesystem::path& path);
  void metric(const std::string& name, nlohmann::ordered_json value);
  void warning(std::string message);
  void note(std::string message);

  const nlohmann::ordered_json& metrics() const { return metrics_; }
  std::size_t warning_count() const { return warnings_.size(); }

  // Sets exit code, error and finish time.
  nlohmann::ordered_json finish(int exit_code, const std::string& error_kind = {},
                                const std::string& error_message = {}) const;

 private:
  std::string command_;
  std::string started_at_;
  nlohmann::ordered_json seeds_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json parameters_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json inputs_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json outputs_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json metrics_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json warnings_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json notes_ = nlohmann::ordered_json::array();
};

std::string now_utc();

}  // namespace solidarity::cli
