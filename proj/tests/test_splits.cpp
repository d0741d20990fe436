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


#include <set>
#include <sstream>

#include "doctest.h"

#include "solidarity/error.hpp"
#include "solidarity/splits.hpp"

using namespace solidarity;

namespace {

LabeledDataset mixed(std::size_t experts, std::size_t crowd, std::size_t autos) {
  LabeledDataset d;
  const auto ts = *parse_timestamp("2020-03-01");
  auto add = [&](const std::string& prefix, std::size_t n, Provenance p) {
    for (std::size_t i = 0; i < n; ++i) {
      d.push_back({make_tweet(prefix + std::to_string(i), "t", Lang::De, ts),
                   static_cast<LabelCoarse>(i % 3), p});
    }
  };
  add("e", experts, Provenance::Expert);
  add("c", crowd, Provenance::Crowd);
  add("u", autos, Provenance::Auto);
  return d;
}

}  // namespace

TEST_CASE("split arithmetic from 919 experts") {
  const auto d = mixed(919, 1040, 30);
  const auto splits = make_splits(d, 170, 170, 3, 42);
  REQUIRE(splits.size() == 3);
  for (const auto& m : splits) {
    CHECK(m.dev.size() == 170);
    CHECK(m.test.size() == 170);
    CHECK(m.expert_train == 579);
    CHECK(m.train.size() == 579 + 1040 + 30);

    std::set<std::string> dev(m.dev.begin(), m.dev.end());
    std::set<std::string> test(m.test.begin(), m.test.end());
    std::set<std::string> train(m.train.begin(), m.train.end());
    CHECK(dev.size() == 170);
    for (const auto& id : m.dev) {
      CHECK(id[0] == 'e');
      CHECK(test.count(id) == 0);
      CHECK(train.count(id) == 0);
    }
    for (const auto& id : m.test) {
      CHECK(id[0] == 'e');
      CHECK(train.count(id) == 0);
    }
    CHECK(dev.size() + test.size() + train.size() == d.size());
  }
  // Independent resampling: splits differ.
  CHECK(splits[0].dev != splits[1].dev);
  // Same seed, same manifests.
  const auto again = make_splits(d, 170, 170, 3, 42);
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(again[s].dev == splits[s].dev);
    CHECK(again[s].test == splits[s].test);
    CHECK(again[s].train == splits[s].train);
  }
}

TEST_CASE("split errors and apply_split") {
  const auto d = mixed(20, 5, 0);
  CHECK_THROWS_AS(make_splits(d, 15, 6, 1, 1), DataError);
  CHECK_NOTHROW(make_splits(d, 10, 10, 1, 1));

  const auto m = make_splits(d, 5, 5, 1, 9)[0];
  const auto data = apply_split(d, m);
  CHECK(data.dev.size() == 5);
  CHECK(data.test.size() == 5);
  CHECK(data.train.size() == 15);
  CHECK(data.train.count(Provenance::Crowd) == 5);
  CHECK(data.dev.count(Provenance::Expert) == 5);

  auto broken = m;
  broken.dev.push_back("missing");
  CHECK_THROWS_AS(apply_split(d, broken), DataError);
}
