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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "solidarity/annotation.hpp"
#include "solidarity/baseline.hpp"
#include "solidarity/timestamp.hpp"
#include "solidarity/weak_supervision.hpp"

namespace solidarity::cli {

struct RunConfig {
  std::filesystem::path corpus;
  std::filesystem::path expert_annotations;
  std::filesystem::path adjudications;
  std::filesystem::path crowd_annotations;
  std::filesystem::path external_series;

  std::uint64_t seed = 1;
  bool strict = true;
  unsigned threads = 1;

  std::size_t dev_size = 170;
  std::size_t test_size = 170;
  std::size_t n_splits = 3;

  Granularity reliability = Granularity::ThreeClass;

  BaselineHyperparams baseline;
  std::size_t candidates = 15;
  std::vector<FeatureMode> candidate_modes = {FeatureMode::TextAndHashtags,
                                              FeatureMode::TextOnly};
  std::size_t ensemble_size = 15;
  AutoLabelConfig autolabel;

  bool oversample = true;
  bool backtranslate = true;
  std::string translator = "mock";
  std::string translator_url;

  bool zero_fill = false;
  unsigned smooth = 0;
  std::optional<Date> window_from;
  std::optional<Date> window_to;
  std::string correlate_metric = "A";

  nlohmann::ordered_json to_json() const;
};

// Reads a JSON config. Relative paths resolve against the config's directory.
// Unknown keys are a UsageError so typos do not pass silently.
RunConfig load_config(const std::filesystem::path& path);
RunConfig config_from_json(const nlohmann::json& j,
                           const std::filesystem::path& base_dir);

Granularity parse_granularity(const std::string& s);
std::string to_string(Granularity g);

}  // namespace solidarity::cli
