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


#include "solidarity/weak_supervision.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>

#include "json.hpp"

#include "solidarity/error.hpp"
#include "solidarity/rng.hpp"

namespace solidarity {

void validate_pool(const ModelPool& pool) {
  std::set<std::string> ids;
  for (const auto& h : pool) {
    if (!ids.insert(h.id).second) {
      throw UsageError("duplicate model id '" + h.id + "' in pool");
    }
    if (!h.model) throw UsageError("model '" + h.id + "' has no classifier");
    if (h.dev_score && (*h.dev_score < 0.0 || *h.dev_score > 1.0)) {
      throw UsageError("model '" + h.id + "' has dev score outside [0,1]");
    }
  }
}

ModelPool select_top_k(const ModelPool& pool, std::size_t k) {
  validate_pool(pool);
  if (k > pool.size()) {
    throw UsageError("select_top_k: k=" + std::to_string(k) +
                     " exceeds pool size " + std::to_string(pool.size()));
  }
  for (const auto& h : pool) {
    if (!h.dev_score) {
      throw UsageError("select_top_k: model '" + h.id + "' has no dev score");
    }
  }
  ModelPool sorted = pool;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ClassifierHandle& a, const ClassifierHandle& b) {
                     return *a.dev_score > *b.dev_score;
                   });
  sorted.resize(k);
  return sorted;
}

std::optional<LabelCoarse> agreed_label(const VoteCounts& votes,
                                        std::size_t threshold) {
  std::optional<LabelCoarse> best;
  for (auto c : kCoarseLabels) {
    if (votes[index(c)] < threshold) continue;
    if (!best || votes[index(c)] > votes[index(*best)]) best = c;
  }
  return best;
}

std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t cap,
                                                    std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const std::size_t take = std::min(cap, n);
  Rng rng(seed);
  // Partial Fisher-Yates: the first `take` slots end up uniformly chosen.
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(take);
  std::sort(idx.begin(), idx.end());
  return idx;
}

namespace {

void check_config(const AutoLabelConfig& cfg) {
  if (cfg.agreement_threshold < 1 ||
      cfg.agreement_threshold > cfg.pool_size) {
    throw UsageError("auto-label config needs 1 <= k <= n");
  }
  if (cfg.per_class_cap < 1) throw UsageError("auto-label cap must be >= 1");
}

// Distinct, fixed streams per class so one class's sample does not shift
// another's.
std::uint64_t class_seed(std::uint64_t seed, LabelCoarse c) {
  return seed * 0x9E3779B97F4A7C15ULL + index(c) + 1;
}

}  // namespace

std::vector<std::size_t> select_auto_labels(std::span<const VoteCounts> votes,
                                            const AutoLabelConfig& cfg) {
  check_config(cfg);
  std::array<std::vector<std::size_t>, kNumCoarse> candidates;
  for (std::size_t i = 0; i < votes.size(); ++i) {
    if (auto l = agreed_label(votes[i], cfg.agreement_threshold)) {
      candidates[index(*l)].push_back(i);
    }
  }
  std::vector<std::size_t> chosen;
  for (auto c : kCoarseLabels) {
    const auto& cand = candidates[index(c)];
    for (auto k : sample_without_replacement(cand.size(), cfg.per_class_cap,
                                             class_seed(cfg.seed, c))) {
      chosen.push_back(cand[k]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

AutoLabelResult auto_label(const ModelPool& pool, const Corpus& unlabeled,
                           const AutoLabelConfig& cfg) {
  check_config(cfg);
  validate_pool(pool);
  if (pool.size() != cfg.pool_size) {
    throw UsageError("auto_label: pool has " + std::to_string(pool.size()) +
                     " models, config expects " + std::to_string(cfg.pool_size));
  }

  const std::size_t n = unlabeled.size();
  std::vector<VoteCounts> votes(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        for (const auto& h : pool) {
          ++votes[i][index(argmax(predict(h, unlabeled[i])))];
        }
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) workers.emplace_back(work);
  }

  AutoLabelResult result;
  result.considered = n;
  // Failed tweets get no votes, which keeps them below any threshold >= 1.
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i].empty()) continue;
    votes[i] = VoteCounts{};
    ++result.skipped;
    result.warnings.push_back("tweet '" + unlabeled[i].id +
                              "' skipped: " + errors[i]);
  }
  for (const auto& v : votes) {
    if (auto l = agreed_label(v, cfg.agreement_threshold)) {
      ++result.retained;
      ++result.retained_per_class[index(*l)];
    }
  }
  for (auto i : select_auto_labels(votes, cfg)) {
    const auto label = *agreed_label(votes[i], cfg.agreement_threshold);
    result.dataset.push_back({unlabeled[i], label, Provenance::Auto});
    result.records.push_back({unlabeled[i].id, label, votes[i]});
  }
  return result;
}

void write_auto_labels(std::ostream& out,
                       std::span<const AutoLabeled> records) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["label"] = std::string(to_string(r.label));
    j["votes"] = {{"S", r.votes[0]}, {"A", r.votes[1]}, {"O", r.votes[2]}};
    j["provenance"] = "auto";
    out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
        << '\n';
  }
}

LabelCoarse resolve_vote(const VoteCounts& votes, const Distribution& prob_sums) {
  const auto top = *std::max_element(votes.begin(), votes.end());
  std::optional<LabelCoarse> best;
  for (auto c : kCoarseLabels) {
    if (votes[index(c)] != top) continue;
    if (!best || prob_sums[index(c)] > prob_sums[index(*best)]) best = c;
  }
  return *best;
}

EnsembleVote majority_vote(std::span<const Distribution> member_outputs) {
  if (member_outputs.empty()) {
    throw UsageError("majority_vote: no member outputs");
  }
  EnsembleVote v;
  for (const auto& p : member_outputs) {
    ++v.votes[index(argmax(p))];
    for (std::size_t c = 0; c < kNumCoarse; ++c) v.prob_sums[c] += p[c];
  }
  v.label = resolve_vote(v.votes, v.prob_sums);
  return v;
}

EnsembleVote ensemble_predict(const ModelPool& models, const Tweet& tweet) {
  if (models.empty()) throw UsageError("ensemble_predict: empty pool");
  std::vector<Distribution> outputs;
  outputs.reserve(models.size());
  std::size_t failed = 0;
  std::string last_error;
  for (const auto& h : models) {
    try {
      outputs.push_back(predict(h, tweet));
    } catch (const std::exception& e) {
      ++failed;
      last_error = h.id + ": " + e.what();
    }
  }
  if (outputs.empty()) {
    throw EndpointError("every ensemble member failed on '" + tweet.id +
                        "' (last: " + last_error + ")");
  }
  auto v = majority_vote(outputs);
  v.failed_members = failed;
  return v;
}

}  // namespace solidarity
