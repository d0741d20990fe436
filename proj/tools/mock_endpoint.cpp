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


// Scripted external-model endpoint speaking the NDJSON stdio protocol.
// Used by tests and for trying the adapter without a real model.

#include <chrono>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "solidarity/labels.hpp"
#include "solidarity/text.hpp"

namespace {

using nlohmann::json;
using solidarity::LabelCoarse;

struct Rule {
  std::string word;
  LabelCoarse label;
};

json scores_for(LabelCoarse top, double mass) {
  const double rest = (1.0 - mass) / 2.0;
  json s = json::object();
  for (auto c : solidarity::kCoarseLabels) {
    s[std::string(solidarity::to_string(c))] = c == top ? mass : rest;
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scripted NDJSON classifier endpoint"};
  std::vector<std::string> rule_specs;
  std::string fallback = "O";
  int sleep_ms = 0;
  std::size_t malformed_every = 0;
  std::size_t wrong_id_every = 0;
  std::size_t exit_after = 0;
  bool bad_sum = false;
  bool near_sum = false;
  app.add_option("--rule", rule_specs, "WORD=LABEL; first matching rule wins");
  app.add_option("--default", fallback, "label when no rule matches")
      ->check(CLI::IsMember({"S", "A", "O"}));
  app.add_option("--sleep-ms", sleep_ms, "delay before each response");
  app.add_option("--malformed-every", malformed_every,
                 "emit a non-JSON line on every Nth request");
  app.add_option("--wrong-id-every", wrong_id_every,
                 "answer every Nth request with a foreign id");
  app.add_option("--exit-after", exit_after, "exit after N responses");
  app.add_flag("--bad-sum", bad_sum, "scores sum to 1.5");
  app.add_flag("--near-sum", near_sum, "scores sum to 1.0005");
  CLI11_PARSE(app, argc, argv);

  std::vector<Rule> rules;
  for (const auto& spec : rule_specs) {
    const auto eq = spec.find('=');
    const auto label = eq == std::string::npos
                           ? std::nullopt
                           : solidarity::parse_coarse(spec.substr(eq + 1));
    if (!label) {
      std::cerr << "mock_endpoint: bad rule '" << spec << "'\n";
      return 1;
    }
    rules.push_back({solidarity::text::to_lower(spec.substr(0, eq)), *label});
  }
  const LabelCoarse default_label = *solidarity::parse_coarse(fallback);

  std::ios::sync_with_stdio(false);
  std::size_t served = 0;
  for (std::string line; std::getline(std::cin, line);) {
    ++served;
    if (sleep_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(sleep_ms));
    if (malformed_every && served % malformed_every == 0) {
      std::cout << "this is not json" << std::endl;
      continue;
    }
    json req;
    try {
      req = json::parse(line);
    } catch (const json::parse_error&) {
      std::cout << "{\"error\":\"bad request\"}" << std::endl;
      continue;
    }
    const std::string text = solidarity::text::to_lower(req.value("text", ""));
    LabelCoarse label = default_label;
    for (const auto& r : rules) {
      if (text.find(r.word) != std::string::npos) {
        label = r.label;
        break;
      }
    }
    json scores = scores_for(label, 0.8);
    if (bad_sum) scores[std::string(solidarity::to_string(label))] = 1.3;
    if (near_sum) scores[std::string(solidarity::to_string(label))] = 0.8005;
    std::string id = req.value("id", "");
    if (wrong_id_every && served % wrong_id_every == 0) id += "-other";
    std::cout << json{{"id", id}, {"scores", scores}}.dump() << std::endl;
    if (exit_after && served >= exit_after) return 0;
  }
  return 0;
}
