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


#include "solidarity/dataset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "solidarity/error.hpp"

namespace solidarity {

using nlohmann::json;

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Expert:
      return "expert";
    case Provenance::Crowd:
      return "crowd";
    case Provenance::Auto:
      return "auto";
    case Provenance::Oversample:
      return "oversample";
    case Provenance::Backtranslation:
      return "backtranslation";
  }
  return "?";
}

std::optional<Provenance> parse_provenance(std::string_view s) {
  for (auto p : {Provenance::Expert, Provenance::Crowd, Provenance::Auto,
                 Provenance::Oversample, Provenance::Backtranslation}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

LabeledDataset::LabeledDataset(std::vector<LabeledExample> examples)
    : examples_(std::move(examples)) {
  for (const auto& e : examples_) ++counts_[index(e.label)];
}

void LabeledDataset::push_back(LabeledExample e) {
  ++counts_[index(e.label)];
  examples_.push_back(std::move(e));
}

void LabeledDataset::append(const LabeledDataset& other) {
  examples_.insert(examples_.end(), other.examples_.begin(),
                   other.examples_.end());
  for (std::size_t c = 0; c < kNumCoarse; ++c) counts_[c] += other.counts_[c];
}

std::size_t LabeledDataset::count(Provenance p) const {
  return static_cast<std::size_t>(
      std::count_if(examples_.begin(), examples_.end(),
                    [p](const LabeledExample& e) { return e.provenance == p; }));
}

LabeledDataset LabeledDataset::filter(
    std::initializer_list<Provenance> keep) const {
  LabeledDataset out;
  for (const auto& e : examples_) {
    if (std::find(keep.begin(), keep.end(), e.provenance) != keep.end()) {
      out.push_back(e);
    }
  }
  return out;
}

void write_dataset(std::ostream& out, const LabeledDataset& d) {
  for (const auto& e : d) {
    json obj;
    obj["id"] = e.tweet.id;
    obj["text"] = e.tweet.text;
    obj["lang"] = std::string(to_string(e.tweet.lang));
    obj["created_at"] = format_timestamp(e.tweet.created_at);
    obj["label"] = std::string(to_string(e.label));
    obj["provenance"] = std::string(to_string(e.provenance));
    out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

LabeledDataset read_dataset(std::istream& in, const std::string& source) {
  LabeledDataset d;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = json::parse(line);
      const auto lang = parse_lang(obj.at("lang").get<std::string>());
      const auto created =
          parse_timestamp(obj.at("created_at").get<std::string>());
      const auto label = parse_coarse(obj.at("label").get<std::string>());
      const auto prov =
          parse_provenance(obj.at("provenance").get<std::string>());
      if (!lang || !created || !label || !prov) {
        throw ParseError(source, lineno,
                         "bad lang, created_at, label or provenance");
      }
      d.push_back({make_tweet(obj.at("id").get<std::string>(),
                              obj.at("text").get<std::string>(), *lang,
                              *created),
                   *label, *prov});
    } catch (const json::exception& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  return d;
}

}  // namespace solidarity
