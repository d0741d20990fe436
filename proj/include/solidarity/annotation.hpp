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

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "solidarity/labels.hpp"

namespace solidarity {

struct Annotation {
  std::string tweet_id;
  std::string annotator_id;
  LabelFine label = LabelFine::NotApplicable;
  std::optional<std::string> stage;

  bool operator==(const Annotation&) const = default;
};

enum class AnnotatorKind { Expert, Crowd };

struct AnnotatorProfile {
  std::string annotator_id;
  AnnotatorKind kind = AnnotatorKind::Crowd;
  // Kappa against the expert gold; empty when the annotator shares no tweet
  // with the gold standard.
  std::optional<double> reliability;
};

using ProfileMap = std::map<std::string, AnnotatorProfile>;

struct GoldStandard {
  std::map<std::string, LabelFine> labels;
  std::set<std::string> excluded;
};

// nullopt marks an item the experts left undecided.
using Adjudications = std::map<std::string, std::optional<LabelFine>>;

// Gold label per tweet: the unique most frequent fine label among the expert
// votes, else the adjudication. Undecided adjudications go to `excluded`.
// Throws DataError for a tweet with neither a unique majority nor an
// adjudication entry, or for a repeated (tweet, annotator) pair.
GoldStandard build_gold(std::span<const Annotation> expert_annotations,
                        const Adjudications& adjudications);

enum class Granularity { ThreeClass, FourClass };

// Per annotator, Cohen's kappa between their labels and the gold on the
// tweets both cover. Annotators without overlap map to nullopt.
std::map<std::string, std::optional<double>> compute_reliability(
    std::span<const Annotation> annotations, const GoldStandard& gold,
    Granularity granularity = Granularity::ThreeClass);

// Crowd label for one tweet: the unique most frequent label; on a tie, the
// label of the most reliable annotator among those voting for a tied label
// (undefined reliability ranks below any defined value), then the
// lexicographically smallest annotator id. Throws UsageError on an empty
// input, mixed tweet ids or a repeated annotator.
LabelFine aggregate_crowd(std::span<const Annotation> annotations,
                          const ProfileMap& profiles);

// Groups by tweet id and aggregates each group.
std::map<std::string, LabelFine> aggregate_all(
    std::span<const Annotation> annotations, const ProfileMap& profiles);

// CSV: tweet_id,annotator_id,label,stage with label in {0,1,2,3}; the stage
// column is optional and may be empty.
std::vector<Annotation> read_annotations(std::istream& in,
                                         const std::string& source);
void write_annotations(std::ostream& out, std::span<const Annotation> rows);

// CSV: tweet_id,label with label in {0,1,2,3,undecided}.
Adjudications read_adjudications(std::istream& in, const std::string& source);

}  // namespace solidarity
