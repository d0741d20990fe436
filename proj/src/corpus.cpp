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


#include "solidarity/corpus.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>

#include "json.hpp"

#include "solidarity/csv.hpp"
#include "solidarity/error.hpp"
#include "solidarity/text.hpp"

namespace solidarity {

using nlohmann::json;

std::string_view to_string(Lang lang) {
  return lang == Lang::En ? "en" : "de";
}

std::optional<Lang> parse_lang(std::string_view s) {
  if (s == "en") return Lang::En;
  if (s == "de") return Lang::De;
  return std::nullopt;
}

Tweet make_tweet(std::string id, std::string text, Lang lang,
                 Timestamp created_at) {
  Tweet t{std::move(id), std::move(text), lang, created_at, {}};
  t.hashtags = extract_hashtags(t.text);
  return t;
}

Corpus::Corpus(std::vector<Tweet> tweets) : tweets_(std::move(tweets)) {
  index_.reserve(tweets_.size());
  for (std::size_t i = 0; i < tweets_.size(); ++i) {
    if (tweets_[i].id.empty()) {
      throw DataError("tweet at position " + std::to_string(i) +
                      " has an empty id");
    }
    if (!index_.emplace(tweets_[i].id, i).second) {
      throw DataError("duplicate tweet id '" + tweets_[i].id + "'");
    }
  }
}

const Tweet* Corpus::find(std::string_view id) const {
  const auto pos = position(id);
  return pos ? &tweets_[*pos] : nullptr;
}

std::optional<std::size_t> Corpus::position(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string required_string(const json& obj, const char* field) {
  const auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) {
    throw DataError(std::string("missing required field '") + field + "'");
  }
  if (!it->is_string()) {
    throw DataError(std::string("field '") + field + "' must be a string");
  }
  auto value = it->get<std::string>();
  if (value.empty()) {
    throw DataError(std::string("field '") + field + "' is empty");
  }
  return value;
}

Tweet parse_line(const std::string& line, const ParseOptions& options) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) throw DataError("line is not a JSON object");

  auto id = required_string(obj, "id");
  auto text = required_string(obj, "text");
  const auto lang_str = required_string(obj, "lang");
  const auto created_str = required_string(obj, "created_at");

  const auto lang = parse_lang(lang_str);
  if (!lang) throw DataError("unsupported lang '" + lang_str + "'");
  const auto created = parse_timestamp(created_str);
  if (!created) throw DataError("unparseable created_at '" + created_str + "'");
  if (*created < options.valid_from || *created >= options.valid_until) {
    throw DataError("created_at '" + created_str +
                    "' outside the validity window");
  }
  return make_tweet(std::move(id), std::move(text), *lang, *created);
}

}  // namespace

ParseResult parse_corpus(std::istream& in, const ParseOptions& options,
                         const std::string& source) {
  ParseResult result;
  std::vector<Tweet> tweets;
  std::unordered_map<std::string, std::size_t> first_line;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      Tweet t = parse_line(line, options);
      const auto [it, inserted] = first_line.emplace(t.id, lineno);
      if (!inserted) {
        throw DataError("duplicate id '" + t.id + "' (first seen on line " +
                        std::to_string(it->second) + ")");
      }
      tweets.push_back(std::move(t));
    } catch (const DataError& e) {
      if (options.strict) throw ParseError(source, lineno, e.what());
      ++result.skipped;
      result.diagnostics.push_back(source + ":" + std::to_string(lineno) +
                                   ": " + e.what());
    }
  }
  result.corpus = Corpus(std::move(tweets));
  return result;
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& t : corpus) {
    json obj;
    obj["id"] = t.id;
    obj["text"] = t.text;
    obj["lang"] = std::string(to_string(t.lang));
    obj["created_at"] = format_timestamp(t.created_at);
    out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

std::vector<std::string> extract_hashtags(std::string_view text) {
  const auto cps = text::decode_utf8(text);
  std::vector<std::string> tags;
  std::unordered_set<std::string> seen;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (cps[i] != U'#') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    std::string tag;
    while (j < cps.size() && text::is_word_char(cps[j])) {
      text::append_utf8(tag, text::to_lower(cps[j]));
      ++j;
    }
    if (!tag.empty() && seen.insert(tag).second) tags.push_back(std::move(tag));
    i = std::max(j, i + 1);
  }
  return tags;
}

std::string normalize_hashtag(std::string_view tag) {
  if (!tag.empty() && tag.front() == '#') tag.remove_prefix(1);
  return text::to_lower(tag);
}

std::vector<HashtagCount> expand_hashtags(const Corpus& corpus,
                                          const std::set<std::string>& seeds,
                                          std::size_t min_cooccurrence) {
  if (seeds.empty()) throw UsageError("expand_hashtags: empty seed set");
  if (min_cooccurrence < 1) {
    throw UsageError("expand_hashtags: min_cooccurrence must be >= 1");
  }
  std::set<std::string> normalized;
  for (const auto& s : seeds) normalized.insert(normalize_hashtag(s));

  std::map<std::string, std::size_t> counts;
  for (const auto& t : corpus) {
    const bool has_seed =
        std::any_of(t.hashtags.begin(), t.hashtags.end(),
                    [&](const std::string& h) { return normalized.count(h); });
    if (!has_seed) continue;
    // hashtags are unique per tweet, so this counts tweets.
    for (const auto& h : t.hashtags) {
      if (!normalized.count(h)) ++counts[h];
    }
  }
  std::vector<HashtagCount> out;
  for (const auto& [tag, n] : counts) {
    if (n >= min_cooccurrence) out.push_back({tag, n});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const HashtagCount& a, const HashtagCount& b) {
                     return a.count > b.count;
                   });
  return out;
}

Corpus filter_by_hashtags(const Corpus& corpus,
                          const std::set<std::string>& keep) {
  std::vector<Tweet> kept;
  for (const auto& t : corpus) {
    if (std::any_of(t.hashtags.begin(), t.hashtags.end(),
                    [&](const std::string& h) { return keep.count(h); })) {
      kept.push_back(t);
    }
  }
  return Corpus(std::move(kept));
}

void write_hashtag_report(std::ostream& out,
                          const std::vector<HashtagCount>& counts) {
  out << "hashtag,count\n";
  for (const auto& c : counts) {
    csv::write_row(out, {c.hashtag, std::to_string(c.count)});
  }
}

}  // namespace solidarity
