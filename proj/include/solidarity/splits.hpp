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
#include <string>
#include <vector>

#include "solidarity/dataset.hpp"

namespace solidarity {

struct SplitManifest {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> dev;
  std::vector<std::string> test;
  // Remaining expert ids followed by every non-expert id, dataset order.
  std::vector<std::string> train;
  std::size_t expert_train = 0;
};

// n_splits independent draws of disjoint dev and test sets from the expert
// examples only (each split resamples the whole expert pool). Throws
// DataError if fewer than dev_size + test_size expert examples exist.
std::vector<SplitManifest> make_splits(const LabeledDataset& d,
                                       std::size_t dev_size,
                                       std::size_t test_size,
                                       std::size_t n_splits,
                                       std::uint64_t seed);

struct SplitData {
  LabeledDataset train;
  LabeledDataset dev;
  LabeledDataset test;
};

// Materializes a manifest against the dataset it was drawn from. Throws
// DataError on ids missing from the dataset.
SplitData apply_split(const LabeledDataset& d, const SplitManifest& m);

}  // namespace solidarity
