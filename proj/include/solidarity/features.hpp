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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solidarity/corpus.hpp"

namespace solidarity {

// Which tweet content feeds the classifier.
enum class FeatureMode { TextOnly, HashtagsOnly, TextAndHashtags };

std::string_view to_string(FeatureMode m);  // "text", "hashtags", "full"
std::optional<FeatureMode> parse_feature_mode(std::string_view s);

// Sorted by index, indices unique and < dim, values non-zero.
struct SparseVector {
  std::uint32_t dim = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  std::size_t nnz() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  bool operator==(const SparseVector&) const = default;
};

// Lowercased tokens. Runs of letters, digits and '_' form words; a '#'
// directly before such a run is kept as a prefix ("#eu").
std::vector<std::string> tokenize(std::string_view text);

// Feature keys before hashing: unigrams and space-joined bigrams.
//   TextOnly:        n-grams over the tokens with hashtag tokens removed
//   HashtagsOnly:    "#tag" unigrams only
//   TextAndHashtags: n-grams over the full token sequence
std::vector<std::string> feature_keys(const Tweet& tweet, FeatureMode mode);

// Hashes every key with FNV-1a 64 masked to dim (a power of two); colliding
// keys add up. Throws UsageError if dim is not a power of two.
SparseVector featurize(const Tweet& tweet, FeatureMode mode, std::uint32_t dim);

inline bool is_power_of_two(std::uint64_t v) { return v && !(v & (v - 1)); }

}  // namespace solidarity
