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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace solidarity::metrics {

struct KappaResult {
  double kappa = 0.0;
  double observed_agreement = 0.0;  // p_o
  double expected_agreement = 0.0;  // p_e
  std::size_t n_items = 0;
};

// Cohen's kappa between two equally long label sequences. Labels are
// arbitrary ints; the universe is the union of values seen. When both raters
// use a single identical label (p_e = p_o = 1) kappa is defined as 1.
// Throws UsageError on length mismatch or empty input.
KappaResult cohen_kappa(std::span<const int> a, std::span<const int> b);

// ratings[r][i] is rater r's label for item i, or nullopt if missing.
using RatingMatrix = std::vector<std::vector<std::optional<int>>>;

struct PairwiseKappa {
  double mean_kappa = 0.0;
  std::size_t pairs_used = 0;
  // Rater index pairs without shared items; they do not enter the mean.
  std::vector<std::pair<std::size_t, std::size_t>> skipped_pairs;
  // Marks the multi-rater statistic as an interpretation in reports.
  std::string method = "mean_pairwise_cohen";
};

// Unweighted mean of Cohen's kappa over all rater pairs, each on the items
// both rated. Throws UsageError with fewer than two raters or when no pair
// overlaps.
PairwiseKappa mean_pairwise_kappa(const RatingMatrix& ratings);

// Fleiss' kappa over items with at least two ratings (raters per item may
// vary). Throws UsageError if no item has two ratings.
double fleiss_kappa(const RatingMatrix& ratings);

// Rows are gold labels, columns predictions. Labels are 0..n_labels-1.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t n_labels)
      : n_(n_labels), counts_(n_labels * n_labels, 0) {}
  ConfusionMatrix(std::size_t n_labels, std::vector<std::size_t> row_major);

  std::size_t size() const { return n_; }
  std::size_t at(std::size_t gold, std::size_t pred) const {
    return counts_[gold * n_ + pred];
  }
  void add(std::size_t gold, std::size_t pred, std::size_t count = 1);
  std::size_t row_sum(std::size_t gold) const;
  std::size_t col_sum(std::size_t pred) const;
  std::size_t total() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> counts_;
};

// Item-aligned gold and predicted labels. Throws UsageError on length
// mismatch or labels outside [0, n_labels).
ConfusionMatrix confusion(std::span<const int> gold, std::span<const int> pred,
                          std::size_t n_labels);

// Id-keyed form: one (item id, predicted label) per prediction, looked up in
// `gold`. Throws DataError naming the first prediction without gold.
ConfusionMatrix confusion(
    const std::vector<std::pair<std::string, int>>& predictions,
    const std::unordered_map<std::string, int>& gold, std::size_t n_labels);

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct MetricsReport {
  std::vector<ClassScores> per_class;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  std::size_t n = 0;
  std::vector<std::string> warnings;
};

// precision = diag/colsum, recall = diag/rowsum, F1 harmonic mean (0 when
// both are 0). A class without gold items scores F1 = 0 and adds a warning.
// Throws UsageError on an empty matrix.
MetricsReport macro_f1(const ConfusionMatrix& m);

}  // namespace solidarity::metrics
