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


#include "solidarity/splits.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "solidarity/error.hpp"
#include "solidarity/rng.hpp"

namespace solidarity {

std::vector<SplitManifest> make_splits(const LabeledDataset& d,
                                       std::size_t dev_size,
                                       std::size_t test_size,
                                       std::size_t n_splits,
                                       std::uint64_t seed) {
  std::vector<std::size_t> expert;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].provenance == Provenance::Expert) expert.push_back(i);
  }
  if (expert.size() < dev_size + test_size) {
    throw DataError("splits need " + std::to_string(dev_size + test_size) +
                    " expert examples, have " + std::to_string(expert.size()));
  }

  std::vector<SplitManifest> out;
  for (std::size_t s = 0; s < n_splits; ++s) {
    SplitManifest m;
    m.index = s;
    m.seed = seed + s;
    std::vector<std::size_t> shuffled = expert;
    Rng rng(m.seed);
    rng.shuffle(std::span<std::size_t>(shuffled));
    std::set<std::size_t> held_out;
    for (std::size_t k = 0; k < dev_size; ++k) {
      m.dev.push_back(d[shuffled[k]].tweet.id);
      held_out.insert(shuffled[k]);
    }
    for (std::size_t k = dev_size; k < dev_size + test_size; ++k) {
      m.test.push_back(d[shuffled[k]].tweet.id);
      held_out.insert(shuffled[k]);
    }
    for (auto i : expert) {
      if (!held_out.count(i)) m.train.push_back(d[i].tweet.id);
    }
    m.expert_train = m.train.size();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i].provenance != Provenance::Expert) m.train.push_back(d[i].tweet.id);
    }
    // Bookkeeping identity: expert pool = dev + test + expert train.
    if (m.expert_train + dev_size + test_size != expert.size()) {
      throw std::logic_error("split bookkeeping mismatch");
    }
    out.push_back(std::move(m));
  }
  return out;
}

SplitData apply_split(const LabeledDataset& d, const SplitManifest& m) {
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < d.size(); ++i) pos.emplace(d[i].tweet.id, i);
  auto take = [&](const std::vector<std::string>& ids) {
    LabeledDataset out;
    for (const auto& id : ids) {
      const auto it = pos.find(id);
      if (it == pos.end()) {
        throw DataError("split manifest names unknown id '" + id + "'");
      }
      out.push_back(d[it->second]);
    }
    return out;
  };
  return {take(m.train), take(m.dev), take(m.test)};
}

}  // namespace solidarity
