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


#include "solidarity/synthetic.hpp"

#include <array>
#include <cmath>
#include <string>

#include "solidarity/rng.hpp"

namespace solidarity::synthetic {

namespace {

using namespace std::chrono;

const std::array<std::vector<std::string>, kNumCoarse> kClassWords = {{
    {"help", "welcome", "support", "together", "donate", "shelter", "share",
     "rescue", "open", "hilfe", "gemeinsam", "spenden", "care", "unite"},
    {"close", "borders", "invasion", "stop", "deport", "nation", "never",
     "illegal", "fence", "grenzen", "abschieben", "refuse", "protect", "ours"},
    {"news", "report", "vote", "meeting", "today", "statement", "debate",
     "weather", "update", "minister", "bericht", "heute", "summit", "press"},
}};

const std::vector<std::string> kShared = {
    "the", "eu", "refugees", "greece", "covid", "we", "they", "now",
    "people", "europe", "die", "und", "lesbos", "money", "crisis"};

const std::vector<std::string> kHashtags = {
    "refugeeswelcome", "leavenoonebehind", "eurobonds", "coronabonds",
    "moria", "grenzenzu", "fluechtlinge", "eu"};

const std::array<std::string, kNumCoarse> kClassTags = {
    "refugeeswelcome", "grenzenzu", "eu"};

const sys_days kEpoch = sys_days{year{2020} / March / 1};

const std::string& pick(Rng& rng, const std::vector<std::string>& v) {
  return v[rng.uniform_below(v.size())];
}

std::string padded(std::size_t i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
}

Tweet make(const std::string& id, std::string text, Lang lang, Rng& rng,
           std::size_t day) {
  const Timestamp ts = kEpoch + days{day} + seconds{rng.uniform_below(86400)};
  return make_tweet(id, std::move(text), lang, ts);
}

LabelFine to_fine(LabelCoarse c, Rng& rng) {
  switch (c) {
    case LabelCoarse::S: return LabelFine::Solidarity;
    case LabelCoarse::A: return LabelFine::AntiSolidarity;
    case LabelCoarse::O: break;
  }
  return rng.uniform_below(2) ? LabelFine::Ambivalent : LabelFine::NotApplicable;
}

// Returns `truth` with probability `accuracy`, otherwise another fine label.
LabelFine noisy(LabelFine truth, double accuracy, Rng& rng) {
  if (rng.uniform01() < accuracy) return truth;
  const auto shift = 1 + rng.uniform_below(kNumFine - 1);
  return static_cast<LabelFine>((index(truth) + shift) % kNumFine);
}

}  // namespace

LabeledDataset separable(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  LabeledDataset out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = static_cast<LabelCoarse>(i % kNumCoarse);
    std::string text;
    for (int w = 0; w < 5; ++w) {
      text += pick(rng, kClassWords[index(label)]) + " ";
    }
    text += pick(rng, kShared) + " " + pick(rng, kShared);
    text += " #" + pick(rng, kHashtags);
    out.push_back({make("sep" + padded(i), std::move(text),
                        i % 2 ? Lang::De : Lang::En, rng, i % 60),
                   label, Provenance::Expert});
  }
  return out;
}

LabeledDataset text_signal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  LabeledDataset out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = static_cast<LabelCoarse>(rng.uniform_below(kNumCoarse));
    std::string text;
    const auto len = 6 + rng.uniform_below(4);
    for (std::uint64_t w = 0; w < len; ++w) {
      text += (rng.uniform01() < 0.6 ? pick(rng, kClassWords[index(label)])
                                     : pick(rng, kShared)) + " ";
    }
    text += "#" + pick(rng, kHashtags) + " #" + pick(rng, kHashtags);
    out.push_back({make("txt" + padded(i), std::move(text), Lang::En, rng, i % 60),
                   label, Provenance::Expert});
  }
  return out;
}

Fixture make_fixture(const FixtureOptions& options) {
  Rng rng(options.seed);
  constexpr std::size_t kDays = 120;

  // Two waves of infections; anti-solidarity share follows the curve.
  std::array<double, kDays> infections{};
  double peak = 0.0;
  for (std::size_t d = 0; d < kDays; ++d) {
    const double x = static_cast<double>(d);
    infections[d] = 4000.0 * std::exp(-std::pow((x - 35.0) / 12.0, 2)) +
                    2500.0 * std::exp(-std::pow((x - 105.0) / 15.0, 2)) + 150.0;
    peak = std::max(peak, infections[d]);
  }

  Fixture f;
  std::vector<Tweet> tweets;
  std::vector<LabelCoarse> truth;
  for (std::size_t i = 0; i < options.n_tweets; ++i) {
    const auto day = rng.uniform_below(kDays);
    const double p_a = 0.15 + 0.4 * infections[day] / peak;
    const double u = rng.uniform01();
    const LabelCoarse label = u < p_a              ? LabelCoarse::A
                              : u < p_a + 0.2      ? LabelCoarse::O
                                                   : LabelCoarse::S;
    std::string text;
    const auto len = 6 + rng.uniform_below(5);
    for (std::uint64_t w = 0; w < len; ++w) {
      text += (rng.uniform01() < 0.55 ? pick(rng, kClassWords[index(label)])
                                      : pick(rng, kShared)) + " ";
    }
    text += "#" + (rng.uniform01() < 0.5 ? kClassTags[index(label)]
                                         : pick(rng, kHashtags));
    if (rng.uniform01() < 0.4) text += " #" + pick(rng, kHashtags);
    const Lang lang = rng.uniform01() < 0.6 ? Lang::De : Lang::En;
    tweets.push_back(make("t" + padded(i), std::move(text), lang, rng, day));
    truth.push_back(label);
  }

  // Expert block: three experts, 4-class labels, adjudication for 3-way splits.
  const std::array<std::string, 3> experts = {"e1", "e2", "e3"};
  for (std::size_t i = 0; i < options.n_expert && i < tweets.size(); ++i) {
    const LabelFine fine = to_fine(truth[i], rng);
    std::array<LabelFine, 3> votes{};
    for (std::size_t e = 0; e < experts.size(); ++e) {
      votes[e] = noisy(fine, 0.85, rng);
      f.expert.push_back({tweets[i].id, experts[e], votes[e], "I"});
    }
    if (votes[0] != votes[1] && votes[0] != votes[2] && votes[1] != votes[2]) {
      f.adjudications[tweets[i].id] =
          rng.uniform01() < 0.8 ? std::optional<LabelFine>(fine) : std::nullopt;
    }
  }

  // Crowd: six annotators of varying accuracy; three per crowd tweet, all six
  // on a check block of expert tweets.
  const std::array<std::pair<std::string, double>, 6> crowd = {{
      {"c1", 0.9}, {"c2", 0.85}, {"c3", 0.8}, {"c4", 0.75}, {"c5", 0.7}, {"c6", 0.6}}};
  for (std::size_t i = 0; i < options.n_crowd_check && i < options.n_expert; ++i) {
    const LabelFine fine = to_fine(truth[i], rng);
    for (const auto& [who, acc] : crowd) {
      f.crowd.push_back({tweets[i].id, who, noisy(fine, acc, rng), "II"});
    }
  }
  const std::size_t crowd_end =
      std::min(tweets.size(), options.n_expert + options.n_crowd);
  for (std::size_t i = options.n_expert; i < crowd_end; ++i) {
    const LabelFine fine = to_fine(truth[i], rng);
    std::array<std::size_t, 6> order = {0, 1, 2, 3, 4, 5};
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& [who, acc] = crowd[order[k]];
      f.crowd.push_back({tweets[i].id, who, noisy(fine, acc, rng), "II"});
    }
  }

  for (std::size_t d = 0; d < kDays; ++d) {
    f.infections[kEpoch + days{d}] = std::round(infections[d]);
  }
  f.corpus = Corpus(std::move(tweets));
  return f;
}

}  // namespace solidarity::synthetic
