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


#include "solidarity/features.hpp"

#include <map>

#include "solidarity/error.hpp"
#include "solidarity/text.hpp"

namespace solidarity {

std::string_view to_string(FeatureMode m) {
  switch (m) {
    case FeatureMode::TextOnly:
      return "text";
    case FeatureMode::HashtagsOnly:
      return "hashtags";
    case FeatureMode::TextAndHashtags:
      return "full";
  }
  return "?";
}

std::optional<FeatureMode> parse_feature_mode(std::string_view s) {
  if (s == "text") return FeatureMode::TextOnly;
  if (s == "hashtags") return FeatureMode::HashtagsOnly;
  if (s == "full") return FeatureMode::TextAndHashtags;
  return std::nullopt;
}

std::vector<std::string> tokenize(std::string_view text) {
  const auto cps = text::decode_utf8(text);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    const bool hashtag = cps[i] == U'#' && i + 1 < cps.size() &&
                         text::is_word_char(cps[i + 1]);
    if (!hashtag && !text::is_word_char(cps[i])) {
      ++i;
      continue;
    }
    std::string tok;
    if (hashtag) {
      tok.push_back('#');
      ++i;
    }
    while (i < cps.size() && text::is_word_char(cps[i])) {
      text::append_utf8(tok, text::to_lower(cps[i]));
      ++i;
    }
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

namespace {

void add_ngrams(const std::vector<std::string>& tokens,
                std::vector<std::string>& keys) {
  for (const auto& t : tokens) keys.push_back(t);
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    keys.push_back(tokens[i - 1] + " " + tokens[i]);
  }
}

}  // namespace

std::vector<std::string> feature_keys(const Tweet& tweet, FeatureMode mode) {
  const auto tokens = tokenize(tweet.text);
  std::vector<std::string> keys;
  switch (mode) {
    case FeatureMode::TextOnly: {
      std::vector<std::string> words;
      for (const auto& t : tokens) {
        if (t.front() != '#') words.push_back(t);
      }
      add_ngrams(words, keys);
      break;
    }
    case FeatureMode::HashtagsOnly:
      for (const auto& t : tokens) {
        if (t.front() == '#') keys.push_back(t);
      }
      break;
    case FeatureMode::TextAndHashtags:
      add_ngrams(tokens, keys);
      break;
  }
  return keys;
}

SparseVector featurize(const Tweet& tweet, FeatureMode mode,
                       std::uint32_t dim) {
  if (!is_power_of_two(dim)) {
    throw UsageError("featurize: dim must be a power of two, got " +
                     std::to_string(dim));
  }
  std::map<std::uint32_t, double> acc;
  for (const auto& key : feature_keys(tweet, mode)) {
    acc[static_cast<std::uint32_t>(text::fnv1a64(key) & (dim - 1))] += 1.0;
  }
  SparseVector v;
  v.dim = dim;
  v.entries.assign(acc.begin(), acc.end());
  return v;
}

}  // namespace solidarity
