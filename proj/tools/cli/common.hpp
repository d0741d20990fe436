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

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "report.hpp"

#include "solidarity/annotation.hpp"
#include "solidarity/augment.hpp"
#include "solidarity/baseline.hpp"
#include "solidarity/corpus.hpp"
#include "solidarity/dataset.hpp"
#include "solidarity/metrics.hpp"
#include "solidarity/splits.hpp"
#include "solidarity/trends.hpp"
#include "solidarity/weak_supervision.hpp"

namespace solidarity::cli {

namespace fs = std::filesystem;

Corpus load_corpus(const fs::path& path, const ParseOptions& options, RunReport& report);
std::vector<Annotation> load_annotations(const fs::path& path, RunReport& report);
Adjudications load_adjudications(const fs::path& path, RunReport& report);
LabeledDataset load_dataset(const fs::path& path, RunReport& report);
trends::ExternalSeries load_series(const fs::path& path, RunReport& report);

void write_output(const fs::path& path, const std::function<void(std::ostream&)>& writer,
                  RunReport& report);
void write_json(const fs::path& path, const nlohmann::ordered_json& j, RunReport& report);

// Human labels: expert gold first, crowd aggregation for the remaining tweets.
struct HumanLabels {
  GoldStandard gold;
  std::map<std::string, std::optional<double>> reliability;
  std::map<std::string, LabelFine> crowd;  // tweets without expert gold
  std::size_t crowd_overridden = 0;        // crowd tweets that had gold
};

HumanLabels build_human_labels(std::span<const Annotation> expert,
                               const Adjudications& adjudications,
                               std::span<const Annotation> crowd,
                               Granularity granularity);

// Expert gold as Expert provenance, crowd labels as Crowd, in corpus order.
// Labeled ids missing from the corpus are counted and reported as warnings.
LabeledDataset human_dataset(const Corpus& corpus, const HumanLabels& labels,
                             RunReport& report);

// CSV written by `aggregate`: tweet_id,label_fine,label,source.
void write_labels_csv(std::ostream& out, const HumanLabels& labels);
std::map<std::string, LabelCoarse> read_labels_csv(std::istream& in,
                                                   const std::string& source);

// Predictions JSONL: {"id","label","scores":{S,A,O}} with optional extras.
struct Prediction {
  std::string id;
  LabelCoarse label = LabelCoarse::O;
  Distribution scores{};
  std::optional<VoteCounts> votes;
  std::size_t failed_members = 0;
};
void write_predictions(std::ostream& out, std::span<const Prediction> preds);
std::vector<Prediction> read_predictions(std::istream& in, const std::string& source);

// Gold labels from a labeled dataset (.jsonl) or an aggregate labels CSV.
std::map<std::string, LabelCoarse> load_gold(const fs::path& path, RunReport& report);

// Pool manifest: {"models":[{"id","path"|"endpoint","dev_score"}]}.
struct PoolEntry {
  std::string id;
  fs::path model_path;
  std::optional<nlohmann::json> endpoint;
  std::optional<double> dev_score;
};
std::vector<PoolEntry> read_pool_manifest(const fs::path& path, RunReport& report);
void write_pool_manifest(const fs::path& path, std::span<const PoolEntry> entries,
                         RunReport& report);
ModelPool instantiate_pool(std::span<const PoolEntry> entries, RunReport& report);

std::unique_ptr<Translator> make_translator(const std::string& kind, const std::string& url);

nlohmann::ordered_json metrics_json(const metrics::MetricsReport& m,
                                    const metrics::ConfusionMatrix& cm);

std::string format_double(double v);

// Split manifests as JSON: {"seed","dev_size","test_size","splits":[...]}.
nlohmann::ordered_json splits_json(std::span<const SplitManifest> splits,
                                   std::uint64_t seed);
std::vector<SplitManifest> read_splits(const fs::path& path, RunReport& report);

// Pairwise Cohen and Fleiss kappa over all annotators in `rows`.
nlohmann::ordered_json agreement_json(std::span<const Annotation> rows,
                                      Granularity granularity);

// A pool of baseline candidates that differ in seed, feature mode and step
// size. Trained in parallel; output order is fixed by candidate index.
struct Candidate {
  std::string id;
  BaselineModel model;
};
std::vector<Candidate> train_candidates(const LabeledDataset& train,
                                        const LabeledDataset& dev,
                                        const BaselineHyperparams& base,
                                        std::span<const FeatureMode> modes,
                                        std::size_t count, unsigned threads);
ModelPool as_pool(std::span<const Candidate> candidates);

// Totals, overall S/A ratio and weekly averages of a daily series.
nlohmann::ordered_json trends_summary(const trends::DailySeries& series);

// Reads the wide daily CSV written by `trends` (date,S,A,O,...).
trends::DailySeries read_daily_csv(const fs::path& path, RunReport& report);

// Spearman rho between a label metric (S, A, O or sa_ratio) and `external`.
// `smooth` > 0 applies a centered moving average to both series first.
nlohmann::ordered_json correlate(const trends::DailySeries& daily,
                                 const trends::ExternalSeries& external,
                                 const std::string& metric, unsigned smooth,
                                 std::optional<Date> from, std::optional<Date> to);

// Macro-F1 of `model` on a labeled dataset.
std::pair<metrics::MetricsReport, metrics::ConfusionMatrix> evaluate(
    const Classifier& model, const LabeledDataset& d);

}  // namespace solidarity::cli
