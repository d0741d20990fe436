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


#include "solidarity/augment.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "solidarity/error.hpp"
#include "solidarity/rng.hpp"

namespace solidarity {

std::string MockTranslator::translate(std::string_view text, Lang,
                                      Lang target) const {
  std::istringstream in{std::string(text)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(std::move(w));
  std::string out = "[" + std::string(to_string(target)) + "]";
  for (auto it = words.rbegin(); it != words.rend(); ++it) {
    out += ' ';
    out += *it;
  }
  return out;
}

LabeledDataset oversample(const LabeledDataset& d, std::uint64_t seed) {
  std::array<std::vector<std::size_t>, kNumCoarse> by_class;
  for (std::size_t i = 0; i < d.size(); ++i) {
    by_class[index(d[i].label)].push_back(i);
  }
  for (auto c : kCoarseLabels) {
    if (by_class[index(c)].empty()) {
      throw DataError("oversample: class " + std::string(to_string(c)) +
                      " has no examples");
    }
  }
  const auto& counts = d.class_counts();
  const std::size_t target = *std::max_element(counts.begin(), counts.end());

  Rng rng(seed);
  LabeledDataset out = d;
  std::map<std::string, std::size_t> copies;
  for (auto c : kCoarseLabels) {
    const auto& pool = by_class[index(c)];
    for (std::size_t k = counts[index(c)]; k < target; ++k) {
      const auto& src = d[pool[rng.uniform_below(pool.size())]];
      LabeledExample dup = src;
      dup.tweet.id = src.tweet.id + "#os" + std::to_string(++copies[src.tweet.id]);
      dup.provenance = Provenance::Oversample;
      out.push_back(std::move(dup));
    }
  }
  return out;
}

namespace {

Lang other(Lang l) { return l == Lang::En ? Lang::De : Lang::En; }

}  // namespace

BackTranslateResult back_translate(const LabeledDataset& d,
                                   const Translator& translator,
                                   const BackTranslateOptions& options) {
  std::vector<std::size_t> sources;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (is_human(d[i].provenance)) sources.push_back(i);
  }

  // One slot per source; filled by workers, read back in order.
  std::vector<std::optional<std::string>> texts(sources.size());
  std::vector<std::string> errors(sources.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < sources.size(); k = next++) {
      const Tweet& t = d[sources[k]].tweet;
      const Lang pivot = t.lang == options.pivot ? other(t.lang) : options.pivot;
      try {
        const auto there = translator.translate(t.text, t.lang, pivot);
        texts[k] = translator.translate(there, pivot, t.lang);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads,
                                      static_cast<unsigned>(sources.size())));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
  }

  BackTranslateResult result;
  result.dataset = d;
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const auto& src = d[sources[k]];
    if (!texts[k]) {
      ++result.failed;
      result.warnings.push_back("back-translation of '" + src.tweet.id +
                                "' failed: " + errors[k]);
      continue;
    }
    if (options.drop_identical && *texts[k] == src.tweet.text) {
      ++result.dropped_identical;
      continue;
    }
    LabeledExample copy = src;
    copy.tweet = make_tweet(src.tweet.id + "#bt", std::move(*texts[k]),
                            src.tweet.lang, src.tweet.created_at);
    copy.provenance = Provenance::Backtranslation;
    result.dataset.push_back(std::move(copy));
    ++result.translated;
  }
  return result;
}

TrainingSets compose_training_sets(const LabeledDataset& human,
                                   const LabeledDataset& auto_labeled,
                                   const Translator& translator,
                                   std::uint64_t seed,
                                   const BackTranslateOptions& options) {
  for (const auto& e : human) {
    if (!is_human(e.provenance)) {
      throw UsageError("compose_training_sets: '" + e.tweet.id +
                       "' is not human-labeled");
    }
  }
  TrainingSets t;
  t.human = human;
  t.with_auto = human;
  t.with_auto.append(auto_labeled);

  const auto balanced = oversample(human, seed);
  LabeledDataset dups;
  for (std::size_t i = human.size(); i < balanced.size(); ++i) {
    dups.push_back(balanced[i]);
  }
  auto bt = back_translate(human, translator, options);
  LabeledDataset copies;
  for (std::size_t i = human.size(); i < bt.dataset.size(); ++i) {
    copies.push_back(bt.dataset[i]);
  }
  t.oversample_duplicates = dups.size();
  t.backtranslation_copies = copies.size();
  t.warnings = std::move(bt.warnings);

  t.with_oversample = t.with_auto;
  t.with_oversample.append(dups);
  t.with_backtranslation = t.with_auto;
  t.with_backtranslation.append(copies);
  t.all = t.with_oversample;
  t.all.append(copies);
  return t;
}

}  // namespace solidarity
