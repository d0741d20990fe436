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
#include <vector>

#include "solidarity/annotation.hpp"
#include "solidarity/corpus.hpp"
#include "solidarity/dataset.hpp"
#include "solidarity/trends.hpp"

// Deterministic synthetic data used by the tests, the acceptance suite and
// the shipped fixture.
namespace solidarity::synthetic {

// Three classes with disjoint vocabularies; linearly separable.
LabeledDataset separable(std::size_t n, std::uint64_t seed);

// Labels depend only on body text. Hashtags are drawn from one shared pool
// independently of the label.
LabeledDataset text_signal(std::size_t n, std::uint64_t seed);

struct FixtureOptions {
  std::size_t n_tweets = 500;
  std::size_t n_expert = 220;
  std::size_t n_crowd = 120;
  // Expert-gold tweets additionally labeled by the crowd, for reliability.
  std::size_t n_crowd_check = 40;
  std::uint64_t seed = 2020;
};

struct Fixture {
  Corpus corpus;
  std::vector<Annotation> expert;
  Adjudications adjudications;
  std::vector<Annotation> crowd;
  trends::ExternalSeries infections;
};

Fixture make_fixture(const FixtureOptions& options = {});

}  // namespace solidarity::synthetic
