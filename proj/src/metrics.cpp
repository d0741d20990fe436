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


#include "solidarity/metrics.hpp"

#include <map>

#include "solidarity/error.hpp"

namespace solidarity::metrics {

KappaResult cohen_kappa(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw UsageError("cohen_kappa: sequences differ in length (" +
                     std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw UsageError("cohen_kappa: empty sequences");

  const auto n = static_cast<double>(a.size());
  std::map<int, std::pair<std::size_t, std::size_t>> marginals;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++agree;
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
  }
  KappaResult r;
  r.n_items = a.size();
  r.observed_agreement = static_cast<double>(agree) / n;
  double pe = 0.0;
  for (const auto& [label, counts] : marginals) {
    pe += (static_cast<double>(counts.first) / n) *
          (static_cast<double>(counts.second) / n);
  }
  r.expected_agreement = pe;
  if (pe >= 1.0) {
    // Only reachable when both raters used one identical label throughout.
    r.kappa = 1.0;
  } else {
    r.kappa = (r.observed_agreement - pe) / (1.0 - pe);
  }
  return r;
}

PairwiseKappa mean_pairwise_kappa(const RatingMatrix& ratings) {
  if (ratings.size() < 2) {
    throw UsageError("mean_pairwise_kappa: need at least two raters");
  }
  PairwiseKappa out;
  double sum = 0.0;
  for (std::size_t r1 = 0; r1 < ratings.size(); ++r1) {
    for (std::size_t r2 = r1 + 1; r2 < ratings.size(); ++r2) {
      std::vector<int> a, b;
      const std::size_t items = std::min(ratings[r1].size(), ratings[r2].size());
      for (std::size_t i = 0; i < items; ++i) {
        if (ratings[r1][i] && ratings[r2][i]) {
          a.push_back(*ratings[r1][i]);
          b.push_back(*ratings[r2][i]);
        }
      }
      if (a.empty()) {
        out.skipped_pairs.emplace_back(r1, r2);
        continue;
      }
      sum += cohen_kappa(a, b).kappa;
      ++out.pairs_used;
    }
  }
  if (out.pairs_used == 0) {
    throw UsageError("mean_pairwise_kappa: no rater pair shares an item");
  }
  out.mean_kappa = sum / static_cast<double>(out.pairs_used);
  return out;
}

double fleiss_kappa(const RatingMatrix& ratings) {
  std::size_t items = 0;
  for (const auto& row : ratings) items = std::max(items, row.size());

  std::map<int, double> label_totals;
  double total_ratings = 0.0;
  double sum_p_i = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < items; ++i) {
    std::map<int, double> counts;
    double n_i = 0.0;
    for (const auto& row : ratings) {
      if (i < row.size() && row[i]) {
        counts[*row[i]] += 1.0;
        n_i += 1.0;
      }
    }
    if (n_i < 2.0) continue;
    double agreeing = 0.0;
    for (const auto& [label, c] : counts) {
      agreeing += c * (c - 1.0);
      label_totals[label] += c;
    }
    sum_p_i += agreeing / (n_i * (n_i - 1.0));
    total_ratings += n_i;
    ++used;
  }
  if (used == 0) throw UsageError("fleiss_kappa: no item has two ratings");

  const double p_bar = sum_p_i / static_cast<double>(used);
  double p_e = 0.0;
  for (const auto& [label, c] : label_totals) {
    const double p = c / total_ratings;
    p_e += p * p;
  }
  if (p_e >= 1.0) return 1.0;
  return (p_bar - p_e) / (1.0 - p_e);
}

ConfusionMatrix::ConfusionMatrix(std::size_t n_labels,
                                 std::vector<std::size_t> row_major)
    : n_(n_labels), counts_(std::move(row_major)) {
  if (counts_.size() != n_ * n_) {
    throw UsageError("ConfusionMatrix: expected " + std::to_string(n_ * n_) +
                     " entries, got " + std::to_string(counts_.size()));
  }
}

void ConfusionMatrix::add(std::size_t gold, std::size_t pred,
                          std::size_t count) {
  if (gold >= n_ || pred >= n_) {
    throw UsageError("ConfusionMatrix::add: label out of range");
  }
  counts_[gold * n_ + pred] += count;
}

std::size_t ConfusionMatrix::row_sum(std::size_t gold) const {
  std::size_t s = 0;
  for (std::size_t p = 0; p < n_; ++p) s += at(gold, p);
  return s;
}

std::size_t ConfusionMatrix::col_sum(std::size_t pred) const {
  std::size_t s = 0;
  for (std::size_t g = 0; g < n_; ++g) s += at(g, pred);
  return s;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t s = 0;
  for (auto c : counts_) s += c;
  return s;
}

ConfusionMatrix confusion(std::span<const int> gold, std::span<const int> pred,
                          std::size_t n_labels) {
  if (gold.size() != pred.size()) {
    throw UsageError("confusion: gold and prediction counts differ");
  }
  ConfusionMatrix m(n_labels);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] < 0 || pred[i] < 0) {
      throw UsageError("confusion: negative label");
    }
    m.add(static_cast<std::size_t>(gold[i]), static_cast<std::size_t>(pred[i]));
  }
  return m;
}

ConfusionMatrix confusion(
    const std::vector<std::pair<std::string, int>>& predictions,
    const std::unordered_map<std::string, int>& gold, std::size_t n_labels) {
  std::vector<int> g, p;
  g.reserve(predictions.size());
  p.reserve(predictions.size());
  for (const auto& [id, label] : predictions) {
    const auto it = gold.find(id);
    if (it == gold.end()) {
      throw DataError("confusion: no gold label for item '" + id + "'");
    }
    g.push_back(it->second);
    p.push_back(label);
  }
  return confusion(g, p, n_labels);
}

MetricsReport macro_f1(const ConfusionMatrix& m) {
  if (m.size() == 0 || m.total() == 0) {
    throw UsageError("macro_f1: empty confusion matrix");
  }
  MetricsReport r;
  r.n = m.total();
  std::size_t correct = 0;
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < m.size(); ++c) {
    ClassScores s;
    const std::size_t tp = m.at(c, c);
    const std::size_t row = m.row_sum(c);
    const std::size_t col = m.col_sum(c);
    correct += tp;
    s.support = row;
    s.precision = col ? static_cast<double>(tp) / static_cast<double>(col) : 0.0;
    s.recall = row ? static_cast<double>(tp) / static_cast<double>(row) : 0.0;
    s.f1 = (s.precision + s.recall) > 0.0
               ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    if (row == 0) {
      r.warnings.push_back("class " + std::to_string(c) +
                           " has no gold items; F1 set to 0");
      s.f1 = 0.0;
    }
    f1_sum += s.f1;
    r.per_class.push_back(s);
  }
  r.macro_f1 = f1_sum / static_cast<double>(m.size());
  r.accuracy = static_cast<double>(correct) / static_cast<double>(r.n);
  return r;
}

}  // namespace solidarity::metrics
