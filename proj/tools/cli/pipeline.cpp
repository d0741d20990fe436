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


#include <chrono>
#include <set>

#include "commands.hpp"
#include "common.hpp"

#include "solidarity/error.hpp"

namespace solidarity::cli {

using nlohmann::ordered_json;

namespace {

struct ConditionResult {
  std::vector<double> macro_f1;
  std::vector<std::size_t> train_size;
};

ordered_json summarize(const ConditionResult& c) {
  double sum = 0.0;
  for (double v : c.macro_f1) sum += v;
  return {{"test_macro_f1_mean", c.macro_f1.empty() ? 0.0 : sum / c.macro_f1.size()},
          {"test_macro_f1", c.macro_f1},
          {"train_size", c.train_size}};
}

double test_f1(const BaselineModel& model, const LabeledDataset& test) {
  return evaluate(BaselineClassifier(model), test).first.macro_f1;
}

}  // namespace

void run_pipeline(const RunConfig& cfg, const fs::path& out_dir, RunReport& r) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto* p : {&cfg.corpus, &cfg.expert_annotations}) {
    if (p->empty()) throw UsageError("config needs corpus and expert_annotations");
  }
  if (cfg.candidates < std::max(cfg.autolabel.pool_size, cfg.ensemble_size)) {
    throw UsageError("pool.candidates must be at least max(autolabel.n, ensemble.size)");
  }
  fs::create_directories(out_dir);
  r.parameter("config", cfg.to_json());
  r.seed("run", cfg.seed);
  r.note("splits are resampled independently; items may recur across splits");
  r.note("auto-labeling uses the top autolabel.n candidates by dev macro-F1, "
         "the ensemble the top ensemble.size from the same candidate pool");

  // Ingest.
  ParseOptions po;
  po.strict = cfg.strict;
  const auto corpus = load_corpus(cfg.corpus, po, r);
  write_output(out_dir / "corpus.jsonl", [&](std::ostream& os) { write_corpus(os, corpus); }, r);

  // Aggregate.
  const auto expert = load_annotations(cfg.expert_annotations, r);
  Adjudications adj;
  if (!cfg.adjudications.empty()) adj = load_adjudications(cfg.adjudications, r);
  std::vector<Annotation> crowd;
  if (!cfg.crowd_annotations.empty()) crowd = load_annotations(cfg.crowd_annotations, r);
  const auto labels = build_human_labels(expert, adj, crowd, cfg.reliability);
  write_output(out_dir / "labels.csv", [&](std::ostream& os) { write_labels_csv(os, labels); }, r);
  const auto human = human_dataset(corpus, labels, r);
  write_output(out_dir / "human.jsonl", [&](std::ostream& os) { write_dataset(os, human); }, r);
  r.metric("corpus", {{"tweets", corpus.size()},
                      {"expert", human.count(Provenance::Expert)},
                      {"crowd", human.count(Provenance::Crowd)},
                      {"excluded", labels.gold.excluded.size()}});
  ordered_json agreement = {{"expert", agreement_json(expert, cfg.reliability)}};
  if (!crowd.empty()) agreement["crowd"] = agreement_json(crowd, cfg.reliability);
  r.metric("agreement", agreement);

  std::set<std::string> labeled;
  for (const auto& e : human) labeled.insert(e.tweet.id);
  for (const auto& id : labels.gold.excluded) labeled.insert(id);
  std::vector<Tweet> rest;
  for (const auto& t : corpus) {
    if (!labeled.count(t.id)) rest.push_back(t);
  }
  const Corpus unlabeled(std::move(rest));

  // Splits.
  const auto splits = make_splits(human, cfg.dev_size, cfg.test_size, cfg.n_splits, cfg.seed);
  write_json(out_dir / "splits.json", splits_json(splits, cfg.seed), r);

  const auto translator = make_translator(cfg.translator, cfg.translator_url);
  BackTranslateOptions bt;
  bt.threads = cfg.threads;

  static constexpr const char* kConditions[] = {
      "E+C", "E+C+Auto", "E+C+Auto+Oversample", "E+C+Auto+Backtranslation", "ALL",
      "E+C hashtags only", "E+C text only"};
  std::map<std::string, ConditionResult> results;
  ConditionResult ensemble_result;
  ordered_json split_info = ordered_json::array();
  ModelPool first_ensemble;

  for (const auto& m : splits) {
    const auto sd = apply_split(human, m);
    auto base = cfg.baseline;
    base.seed = cfg.seed + m.index;

    // Candidate pool, then the two top-k selections.
    const auto cands = train_candidates(sd.train, sd.dev, base, cfg.candidate_modes,
                                        cfg.candidates, cfg.threads);
    const auto pool = as_pool(cands);
    auto al = cfg.autolabel;
    al.seed = cfg.seed + m.index;
    const auto autolabel_pool = select_top_k(pool, al.pool_size);
    const auto ensemble_pool = select_top_k(pool, cfg.ensemble_size);
    const auto auto_res = auto_label(autolabel_pool, unlabeled, al);
    for (const auto& w : auto_res.warnings) r.warning(w);

    const auto sets = compose_training_sets(sd.train, auto_res.dataset, *translator,
                                            cfg.seed + m.index, bt);
    for (const auto& w : sets.warnings) r.warning(w);

    const std::pair<const char*, const LabeledDataset*> trained[] = {
        {kConditions[0], &sets.human},
        {kConditions[1], &sets.with_auto},
        {kConditions[2], &sets.with_oversample},
        {kConditions[3], &sets.with_backtranslation},
        {kConditions[4], &sets.all}};
    for (const auto& [name, d] : trained) {
      const auto model = train_baseline(*d, sd.dev, base);
      results[name].macro_f1.push_back(test_f1(model, sd.test));
      results[name].train_size.push_back(d->size());
    }
    for (auto [name, mode] : {std::pair{kConditions[5], FeatureMode::HashtagsOnly},
                              std::pair{kConditions[6], FeatureMode::TextOnly}}) {
      auto hp = base;
      hp.mode = mode;
      const auto model = train_baseline(sets.human, sd.dev, hp);
      results[name].macro_f1.push_back(test_f1(model, sd.test));
      results[name].train_size.push_back(sets.human.size());
    }

    metrics::ConfusionMatrix cm(kNumCoarse);
    for (const auto& e : sd.test) {
      cm.add(index(e.label), index(ensemble_predict(ensemble_pool, e.tweet).label));
    }
    ensemble_result.macro_f1.push_back(metrics::macro_f1(cm).macro_f1);
    ensemble_result.train_size.push_back(sets.human.size());

    ordered_json per_class = ordered_json::object();
    for (auto c : kCoarseLabels) {
      per_class[std::string(to_string(c))] = auto_res.dataset.count(c);
    }
    split_info.push_back({{"index", m.index},
                          {"train", sd.train.size()},
                          {"expert_train", m.expert_train},
                          {"dev", sd.dev.size()},
                          {"test", sd.test.size()},
                          {"auto_considered", auto_res.considered},
                          {"auto_retained", auto_res.retained},
                          {"auto_selected", auto_res.dataset.size()},
                          {"auto_selected_per_class", per_class},
                          {"oversample_duplicates", sets.oversample_duplicates},
                          {"backtranslation_copies", sets.backtranslation_copies}});

    if (m.index == 0) {
      const fs::path dir = out_dir / "models";
      std::vector<PoolEntry> entries;
      for (const auto& c : cands) {
        const auto path = dir / (c.id + ".model");
        write_output(path, [&](std::ostream& os) { save_model(os, c.model); }, r);
        entries.push_back({c.id, path, std::nullopt, c.model.info().dev_macro_f1});
      }
      write_pool_manifest(dir / "pool.json", entries, r);
      write_output(out_dir / "auto_labels.jsonl",
                   [&](std::ostream& os) { write_dataset(os, auto_res.dataset); }, r);
      first_ensemble = ensemble_pool;
    }
  }
  r.metric("splits", split_info);

  ordered_json table = ordered_json::object();
  for (const auto* name : kConditions) table[name] = summarize(results[name]);
  table["Ensemble (E+C pool)"] = summarize(ensemble_result);
  r.metric("conditions", table);

  // Ensemble predictions over the unlabeled tweets, then trends over all labels.
  std::vector<Prediction> preds;
  std::vector<trends::DatedLabel> dated;
  for (const auto& e : human) dated.push_back({e.tweet.created_at, e.label});
  for (const auto& t : unlabeled) {
    const auto v = ensemble_predict(first_ensemble, t);
    Distribution mean{};
    const double used = static_cast<double>(first_ensemble.size() - v.failed_members);
    for (std::size_t k = 0; k < kNumCoarse; ++k) mean[k] = v.prob_sums[k] / used;
    preds.push_back({t.id, v.label, mean, v.votes, v.failed_members});
    dated.push_back({t.created_at, v.label});
  }
  write_output(out_dir / "predictions.jsonl",
               [&](std::ostream& os) { write_predictions(os, preds); }, r);

  auto series = trends::daily_counts(dated);
  if (cfg.zero_fill) series = trends::zero_fill(series);
  write_output(out_dir / "daily.csv", [&](std::ostream& os) { trends::write_daily_csv(os, series); },
               r);
  r.metric("trends", trends_summary(series));

  if (!cfg.external_series.empty()) {
    const auto external = load_series(cfg.external_series, r);
    r.metric("correlation", correlate(series, external, cfg.correlate_metric, cfg.smooth,
                                      cfg.window_from, cfg.window_to));
  }
  r.metric("elapsed_seconds",
           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

}  // namespace solidarity::cli
