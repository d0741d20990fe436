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


#include "config.hpp"

#include <set>

#include "solidarity/error.hpp"
#include "solidarity/io.hpp"

namespace solidarity::cli {

using nlohmann::json;
using nlohmann::ordered_json;

Granularity parse_granularity(const std::string& s) {
  if (s == "3class") return Granularity::ThreeClass;
  if (s == "4class") return Granularity::FourClass;
  throw UsageError("granularity must be 3class or 4class, got '" + s + "'");
}

std::string to_string(Granularity g) {
  return g == Granularity::ThreeClass ? "3class" : "4class";
}

namespace {

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw UsageError("config: " + where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) {
      throw UsageError("config: unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void get(const json& j, const char* key, T& out) {
  if (!j.contains(key) || j[key].is_null()) return;
  try {
    out = j[key].get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

void get_path(const json& j, const char* key, const std::filesystem::path& base,
              std::filesystem::path& out) {
  std::string s;
  get(j, key, s);
  if (s.empty()) return;
  const std::filesystem::path p(s);
  out = p.is_absolute() ? p : base / p;
}

FeatureMode mode_from(const std::string& s) {
  const auto m = parse_feature_mode(s);
  if (!m) throw UsageError("config: unknown feature mode '" + s + "'");
  return *m;
}

std::optional<Date> date_from(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  const auto d = parse_date(j[key].get<std::string>());
  if (!d) throw UsageError(std::string("config: bad date for '") + key + "'");
  return d;
}

}  // namespace

RunConfig config_from_json(const json& j, const std::filesystem::path& base) {
  check_keys(j, "config",
             {"corpus", "expert_annotations", "adjudications", "crowd_annotations",
              "external_series", "seed", "strict", "threads", "splits",
              "reliability_granularity", "baseline", "pool", "autolabel",
              "ensemble", "augment", "trends"});
  RunConfig c;
  get_path(j, "corpus", base, c.corpus);
  get_path(j, "expert_annotations", base, c.expert_annotations);
  get_path(j, "adjudications", base, c.adjudications);
  get_path(j, "crowd_annotations", base, c.crowd_annotations);
  get_path(j, "external_series", base, c.external_series);
  get(j, "seed", c.seed);
  get(j, "strict", c.strict);
  get(j, "threads", c.threads);
  if (j.contains("reliability_granularity")) {
    c.reliability = parse_granularity(j["reliability_granularity"].get<std::string>());
  }
  if (j.contains("splits")) {
    const auto& s = j["splits"];
    check_keys(s, "splits", {"dev", "test", "count"});
    get(s, "dev", c.dev_size);
    get(s, "test", c.test_size);
    get(s, "count", c.n_splits);
  }
  if (j.contains("baseline")) {
    const auto& b = j["baseline"];
    check_keys(b, "baseline", {"learning_rate", "l2", "max_epochs", "batch_size",
                               "patience", "dim", "mode"});
    get(b, "learning_rate", c.baseline.learning_rate);
    get(b, "l2", c.baseline.l2);
    get(b, "max_epochs", c.baseline.max_epochs);
    get(b, "batch_size", c.baseline.batch_size);
    get(b, "patience", c.baseline.patience);
    get(b, "dim", c.baseline.dim);
    if (b.contains("mode")) c.baseline.mode = mode_from(b["mode"].get<std::string>());
  }
  if (j.contains("pool")) {
    const auto& p = j["pool"];
    check_keys(p, "pool", {"candidates", "modes"});
    get(p, "candidates", c.candidates);
    if (p.contains("modes")) {
      c.candidate_modes.clear();
      for (const auto& m : p["modes"]) c.candidate_modes.push_back(mode_from(m.get<std::string>()));
      if (c.candidate_modes.empty()) throw UsageError("config: pool.modes is empty");
    }
  }
  if (j.contains("autolabel")) {
    const auto& a = j["autolabel"];
    check_keys(a, "autolabel", {"k", "n", "cap"});
    get(a, "k", c.autolabel.agreement_threshold);
    get(a, "n", c.autolabel.pool_size);
    get(a, "cap", c.autolabel.per_class_cap);
  }
  if (j.contains("ensemble")) {
    check_keys(j["ensemble"], "ensemble", {"size"});
    get(j["ensemble"], "size", c.ensemble_size);
  }
  if (j.contains("augment")) {
    const auto& a = j["augment"];
    check_keys(a, "augment", {"oversample", "backtranslate", "translator", "translator_url"});
    get(a, "oversample", c.oversample);
    get(a, "backtranslate", c.backtranslate);
    get(a, "translator", c.translator);
    get(a, "translator_url", c.translator_url);
  }
  if (j.contains("trends")) {
    const auto& t = j["trends"];
    check_keys(t, "trends", {"zero_fill", "smooth", "from", "to", "metric"});
    get(t, "zero_fill", c.zero_fill);
    get(t, "smooth", c.smooth);
    get(t, "metric", c.correlate_metric);
    c.window_from = date_from(t, "from");
    c.window_to = date_from(t, "to");
  }
  c.autolabel.seed = c.seed;
  c.autolabel.threads = c.threads;
  c.baseline.seed = c.seed;
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, std::string("malformed config: ") + e.what());
  }
  return config_from_json(j, path.parent_path());
}

ordered_json RunConfig::to_json() const {
  auto opt_date = [](const std::optional<Date>& d) -> ordered_json {
    return d ? ordered_json(format_date(*d)) : ordered_json(nullptr);
  };
  ordered_json modes = ordered_json::array();
  for (auto m : candidate_modes) modes.push_back(std::string(solidarity::to_string(m)));
  return {
      {"corpus", corpus.string()},
      {"expert_annotations", expert_annotations.string()},
      {"adjudications", adjudications.string()},
      {"crowd_annotations", crowd_annotations.string()},
      {"external_series", external_series.string()},
      {"seed", seed},
      {"strict", strict},
      {"threads", threads},
      {"splits", {{"dev", dev_size}, {"test", test_size}, {"count", n_splits}}},
      {"reliability_granularity", to_string(reliability)},
      {"baseline",
       {{"learning_rate", baseline.learning_rate},
        {"l2", baseline.l2},
        {"max_epochs", baseline.max_epochs},
        {"batch_size", baseline.batch_size},
        {"patience", baseline.patience},
        {"dim", baseline.dim},
        {"mode", std::string(solidarity::to_string(baseline.mode))}}},
      {"pool", {{"candidates", candidates}, {"modes", modes}}},
      {"autolabel",
       {{"k", autolabel.agreement_threshold},
        {"n", autolabel.pool_size},
        {"cap", autolabel.per_class_cap}}},
      {"ensemble", {{"size", ensemble_size}}},
      {"augment",
       {{"oversample", oversample},
        {"backtranslate", backtranslate},
        {"translator", translator},
        {"translator_url", translator_url}}},
      {"trends",
       {{"zero_fill", zero_fill},
        {"smooth", smooth},
        {"from", opt_date(window_from)},
        {"to", opt_date(window_to)},
        {"metric", correlate_metric}}},
  };
}

}  // namespace solidarity::cli
