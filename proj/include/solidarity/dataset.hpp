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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "solidarity/corpus.hpp"
#include "solidarity/labels.hpp"

namespace solidarity {

enum class Provenance { Expert, Crowd, Auto, Oversample, Backtranslation };

std::string_view to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view s);

inline bool is_human(Provenance p) {
  return p == Provenance::Expert || p == Provenance::Crowd;
}

struct LabeledExample {
  Tweet tweet;
  LabelCoarse label = LabelCoarse::O;
  Provenance provenance = Provenance::Expert;

  bool operator==(const LabeledExample&) const = default;
};

using ClassCounts = std::array<std::size_t, kNumCoarse>;

// Ordered examples with class counts kept in sync on every insertion.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  explicit LabeledDataset(std::vector<LabeledExample> examples);

  void push_back(LabeledExample e);
  void append(const LabeledDataset& other);

  const std::vector<LabeledExample>& examples() const { return examples_; }
  const LabeledExample& operator[](std::size_t i) const { return examples_[i]; }
  std::size_t size() const { return examples_.size(); }
  bool empty() const { return examples_.empty(); }
  auto begin() const { return examples_.begin(); }
  auto end() const { return examples_.end(); }

  const ClassCounts& class_counts() const { return counts_; }
  std::size_t count(LabelCoarse l) const { return counts_[index(l)]; }
  std::size_t count(Provenance p) const;

  // Examples whose provenance is in `keep`, order preserved.
  LabeledDataset filter(std::initializer_list<Provenance> keep) const;

  bool operator==(const LabeledDataset& o) const {
    return examples_ == o.examples_;
  }

 private:
  std::vector<LabeledExample> examples_;
  ClassCounts counts_{};
};

// JSONL: the corpus fields plus "label" ("S"|"A"|"O") and "provenance".
void write_dataset(std::ostream& out, const LabeledDataset& d);
LabeledDataset read_dataset(std::istream& in, const std::string& source);

}  // namespace solidarity
