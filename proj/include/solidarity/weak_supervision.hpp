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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solidarity/classifier.hpp"
#include "solidarity/corpus.hpp"
#include "solidarity/dataset.hpp"

namespace solidarity {

using ModelPool = std::vector<ClassifierHandle>;

// Throws UsageError on duplicate ids or a dev score outside [0, 1].
void validate_pool(const ModelPool& pool);

// The k members with the highest dev score, best first; equal scores keep
// pool order. Throws UsageError if k exceeds the pool or a score is unset.
ModelPool select_top_k(const ModelPool& pool, std::size_t k);

using VoteCounts = std::array<std::size_t, kNumCoarse>;

struct AutoLabelConfig {
  std::size_t agreement_threshold = 7;  // k
  std::size_t pool_size = 9;            // n
  std::size_t per_class_cap = 35000;    // m
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

// The label holding at least `threshold` votes, if any. With threshold at
// most half the total two labels could qualify; the larger count wins, then
// class order.
std::optional<LabelCoarse> agreed_label(const VoteCounts& votes,
                                        std::size_t threshold);

// Uniform sample without replacement of min(cap, n) of the indices 0..n-1,
// returned ascending. Deterministic given the generator state.
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t cap,
                                                    std::uint64_t seed);

struct AutoLabeled {
  std::string id;
  LabelCoarse label = LabelCoarse::O;
  VoteCounts votes{};
};

struct AutoLabelResult {
  LabeledDataset dataset;            // provenance Auto, corpus order
  std::vector<AutoLabeled> records;  // aligned with dataset
  std::size_t considered = 0;
  std::size_t retained = 0;  // met the agreement threshold, before capping
  std::array<std::size_t, kNumCoarse> retained_per_class{};
  std::size_t skipped = 0;   // a pool member failed on the tweet
  std::vector<std::string> warnings;
};

// Votes every tweet with the n pool members' argmax labels, keeps tweets
// where some label has >= k votes, then samples up to m per label with the
// configured seed. Throws UsageError if the pool size differs from n or
// the config is inconsistent (k < 1, k > n, m < 1).
AutoLabelResult auto_label(const ModelPool& pool, const Corpus& unlabeled,
                           const AutoLabelConfig& cfg);

// Same selection on precomputed votes (one entry per tweet, in order).
// Returns the chosen indices ascending.
std::vector<std::size_t> select_auto_labels(std::span<const VoteCounts> votes,
                                            const AutoLabelConfig& cfg);

// JSONL: {"id", "label", "votes": {"S","A","O"}, "provenance": "auto"}.
void write_auto_labels(std::ostream& out, std::span<const AutoLabeled> records);

struct EnsembleVote {
  LabelCoarse label = LabelCoarse::O;
  VoteCounts votes{};
  Distribution prob_sums{};
  std::size_t failed_members = 0;
};

// Majority vote over member distributions: strictly most argmax votes;
// among tied labels, the highest summed probability; then S < A < O.
// Throws UsageError on an empty list.
// Most votes, then highest probability sum among the tied, then S<A<O.
LabelCoarse resolve_vote(const VoteCounts& votes, const Distribution& prob_sums);

EnsembleVote majority_vote(std::span<const Distribution> member_outputs);

// Queries every member and applies majority_vote. Failing members are
// excluded and counted; throws EndpointError only if all fail.
EnsembleVote ensemble_predict(const ModelPool& models, const Tweet& tweet);

}  // namespace solidarity
