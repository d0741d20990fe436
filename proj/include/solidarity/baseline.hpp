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
#include <span>
#include <vector>

#include "solidarity/classifier.hpp"
#include "solidarity/dataset.hpp"
#include "solidarity/features.hpp"

namespace solidarity {

struct BaselineHyperparams {
  double learning_rate = 0.5;
  double l2 = 1e-4;
  std::size_t max_epochs = 30;
  std::size_t batch_size = 32;
  // Epochs without dev improvement tolerated before stopping.
  std::size_t patience = 3;
  std::uint64_t seed = 1;
  std::uint32_t dim = 1u << 18;
  FeatureMode mode = FeatureMode::TextAndHashtags;

  bool operator==(const BaselineHyperparams&) const = default;
};

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double dev_macro_f1 = 0.0;

  bool operator==(const EpochLog&) const = default;
};

struct TrainingInfo {
  BaselineHyperparams hyperparams;
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  double dev_macro_f1 = 0.0;
  std::vector<EpochLog> history;

  bool operator==(const TrainingInfo&) const = default;
};

// Multinomial logistic regression over hashed features. Weights are stored
// class-major: weights[c * dim + j].
class BaselineModel {
 public:
  BaselineModel() = default;
  BaselineModel(std::uint32_t dim, FeatureMode mode);

  std::uint32_t dim() const { return dim_; }
  FeatureMode mode() const { return mode_; }
  std::span<const double> weights() const { return weights_; }
  std::span<double> weights() { return weights_; }
  const std::array<double, kNumCoarse>& bias() const { return bias_; }
  std::array<double, kNumCoarse>& bias() { return bias_; }
  const TrainingInfo& info() const { return info_; }
  TrainingInfo& info() { return info_; }

  std::array<double, kNumCoarse> logits(const SparseVector& x) const;
  Distribution predict_proba(const SparseVector& x) const;
  Distribution predict_proba(const Tweet& t) const;

  bool operator==(const BaselineModel&) const = default;

 private:
  std::uint32_t dim_ = 0;
  FeatureMode mode_ = FeatureMode::TextAndHashtags;
  std::vector<double> weights_;
  std::array<double, kNumCoarse> bias_{};
  TrainingInfo info_;
};

// Numerically stable softmax (max logit subtracted first).
Distribution softmax(const std::array<double, kNumCoarse>& logits);

struct ObjectiveValue {
  double loss = 0.0;
  std::vector<double> grad_weights;  // same layout as BaselineModel::weights
  std::array<double, kNumCoarse> grad_bias{};
};

// Mean cross-entropy over the examples plus (l2 / 2) * ||W||^2 (bias not
// regularized), with its analytic gradient.
ObjectiveValue objective(const BaselineModel& model,
                         std::span<const SparseVector> xs,
                         std::span<const LabelCoarse> ys, double l2);

// Mini-batch gradient descent with a seeded per-epoch shuffle. Dev macro-F1
// is measured after every epoch; the best-scoring weights are kept and
// training stops once `patience` further epochs bring no improvement.
// Throws TrainingError on an empty or single-class training set, an empty
// dev set, or a non-finite loss.
BaselineModel train_baseline(const LabeledDataset& train,
                             const LabeledDataset& dev,
                             const BaselineHyperparams& hp);

class BaselineClassifier final : public Classifier {
 public:
  explicit BaselineClassifier(BaselineModel model) : model_(std::move(model)) {}
  Distribution predict(const Tweet& tweet) const override {
    return model_.predict_proba(tweet);
  }
  std::string describe() const override;
  const BaselineModel& model() const { return model_; }

 private:
  BaselineModel model_;
};

// JSON container: {"format": "solidarity-baseline", "version": 1, "dim",
// "mode", "bias", "weights": [[index, wS, wA, wO], ...] for non-zero rows,
// "training": {...}}. Doubles round-trip exactly.
void save_model(std::ostream& out, const BaselineModel& model);
BaselineModel load_model(std::istream& in, const std::string& source);

}  // namespace solidarity
