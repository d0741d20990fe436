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


#include "solidarity/annotation.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <tuple>

#include "solidarity/csv.hpp"
#include "solidarity/error.hpp"
#include "solidarity/metrics.hpp"

namespace solidarity {

namespace {

using FineCounts = std::array<std::size_t, kNumFine>;

std::optional<LabelFine> unique_majority(const FineCounts& counts) {
  const auto top = *std::max_element(counts.begin(), counts.end());
  if (top == 0) return std::nullopt;
  if (std::count(counts.begin(), counts.end(), top) != 1) return std::nullopt;
  const auto pos = std::find(counts.begin(), counts.end(), top) - counts.begin();
  return static_cast<LabelFine>(pos);
}

int granular(LabelFine l, Granularity g) {
  return g == Granularity::ThreeClass ? static_cast<int>(collapse_label(l))
                                      : static_cast<int>(l);
}

}  // namespace

GoldStandard build_gold(std::span<const Annotation> expert_annotations,
                        const Adjudications& adjudications) {
  std::map<std::string, FineCounts> votes;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& a : expert_annotations) {
    if (!seen.emplace(a.tweet_id, a.annotator_id).second) {
      throw DataError("annotator '" + a.annotator_id +
                      "' labeled tweet '" + a.tweet_id + "' twice");
    }
    ++votes[a.tweet_id][index(a.label)];
  }

  GoldStandard gold;
  for (const auto& [tweet, counts] : votes) {
    if (auto majority = unique_majority(counts)) {
      gold.labels.emplace(tweet, *majority);
      continue;
    }
    const auto adj = adjudications.find(tweet);
    if (adj == adjudications.end()) {
      throw DataError("tweet '" + tweet +
                      "' has no unique expert majority and no adjudication");
    }
    if (adj->second) {
      gold.labels.emplace(tweet, *adj->second);
    } else {
      gold.excluded.insert(tweet);
    }
  }
  return gold;
}

std::map<std::string, std::optional<double>> compute_reliability(
    std::span<const Annotation> annotations, const GoldStandard& gold,
    Granularity granularity) {
  std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> paired;
  std::map<std::string, std::optional<double>> out;
  for (const auto& a : annotations) {
    out.try_emplace(a.annotator_id);
    const auto it = gold.labels.find(a.tweet_id);
    if (it == gold.labels.end()) continue;
    auto& [mine, theirs] = paired[a.annotator_id];
    mine.push_back(granular(a.label, granularity));
    theirs.push_back(granular(it->second, granularity));
  }
  for (const auto& [annotator, seqs] : paired) {
    out[annotator] = metrics::cohen_kappa(seqs.first, seqs.second).kappa;
  }
  return out;
}

LabelFine aggregate_crowd(std::span<const Annotation> annotations,
                          const ProfileMap& profiles) {
  if (annotations.empty()) {
    throw UsageError("aggregate_crowd: no annotations");
  }
  FineCounts counts{};
  std::set<std::string> annotators;
  for (const auto& a : annotations) {
    if (a.tweet_id != annotations.front().tweet_id) {
      throw UsageError("aggregate_crowd: annotations for different tweets");
    }
    if (!annotators.insert(a.annotator_id).second) {
      throw UsageError("aggregate_crowd: annotator '" + a.annotator_id +
                       "' appears twice for tweet '" + a.tweet_id + "'");
    }
    ++counts[index(a.label)];
  }
  if (auto majority = unique_majority(counts)) return *majority;

  const auto top = *std::max_element(counts.begin(), counts.end());
  // Rank key: defined reliability first, then higher kappa, then smaller id.
  const Annotation* best = nullptr;
  auto key = [&](const Annotation& a) {
    const auto p = profiles.find(a.annotator_id);
    std::optional<double> rel;
    if (p != profiles.end()) rel = p->second.reliability;
    return std::make_tuple(rel.has_value(), rel.value_or(0.0));
  };
  for (const auto& a : annotations) {
    if (counts[index(a.label)] != top) continue;
    if (best == nullptr) {
      best = &a;
      continue;
    }
    const auto ka = key(a);
    const auto kb = key(*best);
    if (ka > kb || (ka == kb && a.annotator_id < best->annotator_id)) best = &a;
  }
  return best->label;
}

std::map<std::string, LabelFine> aggregate_all(
    std::span<const Annotation> annotations, const ProfileMap& profiles) {
  std::map<std::string, std::vector<Annotation>> by_tweet;
  for (const auto& a : annotations) by_tweet[a.tweet_id].push_back(a);
  std::map<std::string, LabelFine> out;
  for (const auto& [tweet, group] : by_tweet) {
    out.emplace(tweet, aggregate_crowd(group, profiles));
  }
  return out;
}

std::vector<Annotation> read_annotations(std::istream& in,
                                         const std::string& source) {
  const auto table = csv::read(in, source);
  const auto c_tweet = table.column("tweet_id", source);
  const auto c_annot = table.column("annotator_id", source);
  const auto c_label = table.column("label", source);
  std::optional<std::size_t> c_stage;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == "stage") c_stage = i;
  }

  std::vector<Annotation> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [line, row] : table.rows) {
    Annotation a;
    a.tweet_id = row[c_tweet];
    a.annotator_id = row[c_annot];
    if (a.tweet_id.empty() || a.annotator_id.empty()) {
      throw ParseError(source, line, "empty tweet_id or annotator_id");
    }
    const auto label = parse_fine(row[c_label]);
    if (!label) {
      throw ParseError(source, line, "label must be 0..3, got '" +
                                         row[c_label] + "'");
    }
    a.label = *label;
    if (c_stage && !row[*c_stage].empty()) a.stage = row[*c_stage];
    if (!seen.emplace(a.tweet_id, a.annotator_id).second) {
      throw ParseError(source, line,
                       "second annotation of tweet '" + a.tweet_id +
                           "' by '" + a.annotator_id + "'");
    }
    out.push_back(std::move(a));
  }
  return out;
}

void write_annotations(std::ostream& out, std::span<const Annotation> rows) {
  out << "tweet_id,annotator_id,label,stage\n";
  for (const auto& a : rows) {
    csv::write_row(out, {a.tweet_id, a.annotator_id,
                         std::to_string(static_cast<int>(a.label)),
                         a.stage.value_or("")});
  }
}

Adjudications read_adjudications(std::istream& in, const std::string& source) {
  const auto table = csv::read(in, source);
  const auto c_tweet = table.column("tweet_id", source);
  const auto c_label = table.column("label", source);
  Adjudications out;
  for (const auto& [line, row] : table.rows) {
    std::optional<LabelFine> label;
    if (row[c_label] != "undecided") {
      label = parse_fine(row[c_label]);
      if (!label) {
        throw ParseError(source, line, "label must be 0..3 or 'undecided', got '" +
                                           row[c_label] + "'");
      }
    }
    if (!out.emplace(row[c_tweet], label).second) {
      throw ParseError(source, line,
                       "duplicate adjudication for '" + row[c_tweet] + "'");
    }
  }
  return out;
}

}  // namespace solidarity
