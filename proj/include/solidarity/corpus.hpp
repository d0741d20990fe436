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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "solidarity/timestamp.hpp"

namespace solidarity {

enum class Lang { En, De };

std::string_view to_string(Lang lang);
std::optional<Lang> parse_lang(std::string_view s);

struct Tweet {
  std::string id;
  std::string text;
  Lang lang = Lang::En;
  Timestamp created_at{};
  // Normalized: lowercase, '#' stripped, first occurrence order, unique.
  std::vector<std::string> hashtags;

  bool operator==(const Tweet&) const = default;
};

// Builds a Tweet with hashtags derived from text.
Tweet make_tweet(std::string id, std::string text, Lang lang,
                 Timestamp created_at);

// Immutable, ordered tweet collection with an id index. Safe to share across
// threads for reading.
class Corpus {
 public:
  Corpus() = default;
  // Throws DataError on duplicate or empty ids.
  explicit Corpus(std::vector<Tweet> tweets);

  const std::vector<Tweet>& tweets() const { return tweets_; }
  std::size_t size() const { return tweets_.size(); }
  bool empty() const { return tweets_.empty(); }
  const Tweet& operator[](std::size_t i) const { return tweets_[i]; }
  auto begin() const { return tweets_.begin(); }
  auto end() const { return tweets_.end(); }

  const Tweet* find(std::string_view id) const;
  std::optional<std::size_t> position(std::string_view id) const;

  bool operator==(const Corpus& other) const { return tweets_ == other.tweets_; }

 private:
  std::vector<Tweet> tweets_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ParseOptions {
  // Strict: first error throws. Lenient: offending lines are skipped and
  // counted.
  bool strict = true;
  Timestamp valid_from = Timestamp{std::chrono::sys_days{
      std::chrono::year{2006} / std::chrono::March / 21}};
  Timestamp valid_until = Timestamp{std::chrono::sys_days{
      std::chrono::year{2100} / std::chrono::January / 1}};
};

struct ParseResult {
  Corpus corpus;
  std::size_t skipped = 0;
  // One "source:line: message" entry per skipped line (lenient mode).
  std::vector<std::string> diagnostics;
};

// Reads JSONL with fields id, text, lang ("en"|"de"), created_at (ISO-8601).
// Errors name the 1-based line. Blank lines are ignored.
ParseResult parse_corpus(std::istream& in, const ParseOptions& options = {},
                         const std::string& source = "<corpus>");

// Writes the same JSONL format (created_at normalized to UTC "Z" form).
void write_corpus(std::ostream& out, const Corpus& corpus);

// '#' followed by one or more letters, digits or underscores. Lowercased,
// '#' removed, duplicates dropped keeping the first occurrence.
std::vector<std::string> extract_hashtags(std::string_view text);

// Lowercases and strips one leading '#'.
std::string normalize_hashtag(std::string_view tag);

struct HashtagCount {
  std::string hashtag;
  std::size_t count = 0;
  bool operator==(const HashtagCount&) const = default;
};

// Non-seed hashtags co-occurring in the same tweet with any seed, counted
// once per tweet, keeping those with count >= min_cooccurrence. Sorted by
// count descending, then hashtag ascending. Seeds are normalized first.
std::vector<HashtagCount> expand_hashtags(const Corpus& corpus,
                                          const std::set<std::string>& seeds,
                                          std::size_t min_cooccurrence);

// Tweets whose hashtags intersect `keep`, in corpus order.
Corpus filter_by_hashtags(const Corpus& corpus,
                          const std::set<std::string>& keep);

// CSV "hashtag,count".
void write_hashtag_report(std::ostream& out,
                          const std::vector<HashtagCount>& counts);

}  // namespace solidarity
