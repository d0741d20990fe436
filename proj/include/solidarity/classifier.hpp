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
#include <memory>
#include <optional>
#include <string>

#include "solidarity/corpus.hpp"
#include "solidarity/labels.hpp"

namespace solidarity {

// Probabilities over {S, A, O} in that order.
using Distribution = std::array<double, kNumCoarse>;

// First maximum wins, so ties resolve in S < A < O order.
LabelCoarse argmax(const Distribution& p);

// Uniform predict interface over native and external models. predict() must
// be safe to call concurrently; implementations serialize internally where
// the transport requires it.
class Classifier {
 public:
  virtual ~Classifier() = default;
  // Throws EndpointError for transport failures and bad responses.
  virtual Distribution predict(const Tweet& tweet) const = 0;
  virtual std::string describe() const = 0;
};

struct ClassifierHandle {
  std::string id;
  std::shared_ptr<const Classifier> model;
  std::optional<double> dev_score;
};

inline Distribution predict(const ClassifierHandle& handle, const Tweet& tweet) {
  return handle.model->predict(tweet);
}

}  // namespace solidarity
