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


#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <set>

#include "common.hpp"

#include "solidarity/csv.hpp"
#include "solidarity/error.hpp"
#include "solidarity/io.hpp"

namespace solidarity::cli {

using nlohmann::ordered_json;

namespace {

FeatureMode mode_option(const std::string& s) {
  const auto m = parse_feature_mode(s);
  if (!m) throw UsageError("unknown feature mode '" + s + "' (use full, text or hashtags)");
  return *m;
}

std::optional<Date> date_option(const std::string& s, const char* flag) {
  if (s.empty()) return std::nullopt;
  const auto d = parse_date(s);
  if (!d) throw UsageError(std::string(flag) + ": expected YYYY-MM-DD, got '" + s + "'");
  return d;
}

std::ifstream open_or_throw(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot open '" + p.string() + "'");
  return in;
}

void print(const Context& ctx, const ordered_json& j) {
  if (!ctx.quiet) std::cout << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- ingest

void add_ingest(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string input, output;
    bool lenient = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("ingest", "Validate and normalize a JSONL tweet corpus");
  sub->add_option("-i,--input", o->input, "Corpus JSONL")->required();
  sub->add_option("-o,--output", o->output, "Normalized corpus JSONL");
  sub->add_flag("--lenient", o->lenient, "Skip bad lines instead of failing");
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   ParseOptions po;
                   po.strict = !o->lenient;
                   r.parameter("strict", po.strict);
                   const auto corpus = load_corpus(o->input, po, r);
                   if (!o->output.empty()) {
                     write_output(o->output,
                                  [&](std::ostream& os) { write_corpus(os, corpus); }, r);
                   }
                   std::size_t en = 0;
                   for (const auto& t : corpus) en += t.lang == Lang::En;
                   const ordered_json m = {{"tweets", corpus.size()},
                                           {"en", en},
                                           {"de", corpus.size() - en},
                                           {"skipped", r.warning_count()}};
                   r.metric("corpus", m);
                   print(ctx, m);
                 }});
}

// -------------------------------------------------------------- hashtags

void add_hashtags(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string corpus, output, filtered;
    std::vector<std::string> seeds;
    std::size_t threshold = 100;
    bool lenient = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("hashtags", "Expand a seed hashtag set by co-occurrence");
  sub->add_option("-c,--corpus", o->corpus, "Corpus JSONL")->required();
  sub->add_option("-s,--seed-tag", o->seeds, "Seed hashtag (repeatable)")->required();
  sub->add_option("-t,--threshold", o->threshold, "Minimum co-occurrence count")
      ->capture_default_str();
  sub->add_option("-o,--output", o->output, "Hashtag count CSV");
  sub->add_option("--filtered", o->filtered, "Write tweets carrying a kept hashtag");
  sub->add_flag("--lenient", o->lenient, "Skip bad corpus lines");
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   ParseOptions po;
                   po.strict = !o->lenient;
                   const auto corpus = load_corpus(o->corpus, po, r);
                   r.parameter("threshold", o->threshold);
                   r.parameter("seed_tags", o->seeds);
                   const std::set<std::string> seeds(o->seeds.begin(), o->seeds.end());
                   const auto counts = expand_hashtags(corpus, seeds, o->threshold);
                   if (!o->output.empty()) {
                     write_output(o->output,
                                  [&](std::ostream& os) { write_hashtag_report(os, counts); },
                                  r);
                   }
                   std::set<std::string> keep;
                   for (const auto& s : seeds) keep.insert(normalize_hashtag(s));
                   for (const auto& c : counts) keep.insert(c.hashtag);
                   const auto filtered = filter_by_hashtags(corpus, keep);
                   if (!o->filtered.empty()) {
                     write_output(o->filtered,
                                  [&](std::ostream& os) { write_corpus(os, filtered); }, r);
                   }
                   ordered_json tags = ordered_json::array();
                   for (const auto& c : counts) tags.push_back({{"hashtag", c.hashtag}, {"count", c.count}});
                   const ordered_json m = {{"expanded", counts.size()},
                                           {"kept_tags", keep.size()},
                                           {"filtered_tweets", filtered.size()},
                                           {"hashtags", tags}};
                   r.metric("hashtags", m);
                   print(ctx, m);
                 }});
}

// ------------------------------------------------------------- aggregate

void add_aggregate(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string expert, adjudications, crowd, output, corpus, dataset, granularity = "3class";
    bool lenient = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "aggregate", "Build expert gold and aggregate crowd labels by reliability");
  sub->add_option("-e,--expert", o->expert, "Expert annotation CSV");
  sub->add_option("-a,--adjudications", o->adjudications, "Adjudication CSV");
  sub->add_option("-c,--crowd", o->crowd, "Crowd annotation CSV");
  sub->add_option("-o,--output", o->output, "Label CSV")->required();
  sub->add_option("--corpus", o->corpus, "Corpus JSONL, needed for --dataset");
  sub->add_option("--dataset", o->dataset, "Also write a labeled dataset JSONL");
  sub->add_option("-g,--granularity", o->granularity, "Reliability granularity: 3class or 4class")
      ->capture_default_str();
  sub->add_flag("--lenient", o->lenient, "Skip bad corpus lines");
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   if (o->expert.empty() && o->crowd.empty()) {
                     throw UsageError("aggregate needs --expert and/or --crowd");
                   }
                   if (!o->dataset.empty() && o->corpus.empty()) {
                     throw UsageError("--dataset needs --corpus");
                   }
                   const auto g = parse_granularity(o->granularity);
                   r.parameter("granularity", to_string(g));
                   std::vector<Annotation> expert, crowd;
                   Adjudications adj;
                   if (!o->expert.empty()) expert = load_annotations(o->expert, r);
                   if (!o->adjudications.empty()) adj = load_adjudications(o->adjudications, r);
                   if (!o->crowd.empty()) crowd = load_annotations(o->crowd, r);
                   const auto labels = build_human_labels(expert, adj, crowd, g);
                   write_output(o->output,
                                [&](std::ostream& os) { write_labels_csv(os, labels); }, r);
                   if (!o->dataset.empty()) {
                     ParseOptions po;
                     po.strict = !o->lenient;
                     const auto corpus = load_corpus(o->corpus, po, r);
                     const auto d = human_dataset(corpus, labels, r);
                     write_output(o->dataset, [&](std::ostream& os) { write_dataset(os, d); }, r);
                   }
                   ordered_json rel = ordered_json::object();
                   for (const auto& [id, v] : labels.reliability) {
                     rel[id] = v ? ordered_json(*v) : ordered_json(nullptr);
                   }
                   const ordered_json m = {{"gold", labels.gold.labels.size()},
                                           {"excluded", labels.gold.excluded.size()},
                                           {"crowd", labels.crowd.size()},
                                           {"crowd_overridden_by_gold", labels.crowd_overridden},
                                           {"reliability", rel}};
                   r.metric("aggregate", m);
                   print(ctx, m);
                 }});
}

// ------------------------------------------------------------- agreement

void add_agreement(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string annotations, granularity = "3class";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("agreement", "Inter-annotator agreement (Cohen and Fleiss kappa)");
  sub->add_option("-a,--annotations", o->annotations, "Annotation CSV")->required();
  sub->add_option("-g,--granularity", o->granularity, "3class or 4class")->capture_default_str();
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   const auto g = parse_granularity(o->granularity);
                   const auto rows = load_annotations(o->annotations, r);
                   const auto m = agreement_json(rows, g);
                   r.metric("agreement", m);
                   print(ctx, m);
                 }});
}

// ---------------------------------------------------------------- splits

void add_splits(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string dataset, output;
    std::size_t dev = 170, test = 170, count = 3;
    std::uint64_t seed = 1;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("splits", "Sample dev/test splits from expert items");
  sub->add_option("-d,--dataset", o->dataset, "Human-labeled dataset JSONL")->required();
  sub->add_option("-o,--output", o->output, "Split manifest JSON")->required();
  sub->add_option("--dev", o->dev, "Dev size")->capture_default_str();
  sub->add_option("--test", o->test, "Test size")->capture_default_str();
  sub->add_option("-n,--count", o->count, "Number of random splits")->capture_default_str();
  sub->add_option("--seed", o->seed, "Sampling seed")->capture_default_str();
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   r.seed("splits", o->seed);
                   r.parameter("dev", o->dev);
                   r.parameter("test", o->test);
                   r.parameter("count", o->count);
                   const auto d = load_dataset(o->dataset, r);
                   const auto splits = make_splits(d, o->dev, o->test, o->count, o->seed);
                   write_json(o->output, splits_json(splits, o->seed), r);
                   ordered_json per = ordered_json::array();
                   for (const auto& s : splits) {
                     per.push_back({{"index", s.index},
                                    {"dev", s.dev.size()},
                                    {"test", s.test.size()},
                                    {"train", s.train.size()},
                                    {"expert_train", s.expert_train}});
                   }
                   r.note("splits are resampled independently; items may recur across splits");
                   r.metric("splits", per);
                   print(ctx, per);
                 }});
}

// ----------------------------------------------------------------- train

void add_train(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string train, dev, dataset, splits, output, pool_dir, mode = "full";
    std::vector<std::string> modes = {"full", "text"};
    std::size_t split = 0, candidates = 0;
    unsigned threads = 1;
    BaselineHyperparams hp;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("train", "Train the hashed logistic-regression baseline");
  sub->add_option("--train", o->train, "Training dataset JSONL");
  sub->add_option("--dev", o->dev, "Dev dataset JSONL");
  sub->add_option("-d,--dataset", o->dataset, "Dataset JSONL to split with --splits");
  sub->add_option("--splits", o->splits, "Split manifest JSON");
  sub->add_option("--split", o->split, "Split index")->capture_default_str();
  sub->add_option("-o,--output", o->output, "Model file (single model)");
  sub->add_option("--candidates", o->candidates, "Train this many candidates instead");
  sub->add_option("--pool-dir", o->pool_dir, "Directory for candidate models and pool.json");
  sub->add_option("--modes", o->modes, "Candidate feature modes")->capture_default_str();
  sub->add_option("--mode", o->mode, "Feature mode: full, text or hashtags")->capture_default_str();
  sub->add_option("--lr", o->hp.learning_rate, "Learning rate")->capture_default_str();
  sub->add_option("--l2", o->hp.l2, "L2 penalty")->capture_default_str();
  sub->add_option("--epochs", o->hp.max_epochs, "Maximum epochs")->capture_default_str();
  sub->add_option("--batch", o->hp.batch_size, "Minibatch size")->capture_default_str();
  sub->add_option("--patience", o->hp.patience, "Early-stopping patience")->capture_default_str();
  sub->add_option("--dim", o->hp.dim, "Hash dimension (power of two)")->capture_default_str();
  sub->add_option("--seed", o->hp.seed, "Training seed")->capture_default_str();
  sub->add_option("--threads", o->threads, "Parallel candidates")->capture_default_str();
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   LabeledDataset train, dev;
                   if (!o->dataset.empty() || !o->splits.empty()) {
                     if (o->dataset.empty() || o->splits.empty()) {
                       throw UsageError("--dataset and --splits go together");
                     }
                     const auto d = load_dataset(o->dataset, r);
                     const auto splits = read_splits(o->splits, r);
                     if (o->split >= splits.size()) throw UsageError("--split out of range");
                     auto sd = apply_split(d, splits[o->split]);
                     train = std::move(sd.train);
                     dev = std::move(sd.dev);
                   } else {
                     if (o->train.empty() || o->dev.empty()) {
                       throw UsageError("give --train and --dev, or --dataset with --splits");
                     }
                     train = load_dataset(o->train, r);
                     dev = load_dataset(o->dev, r);
                   }
                   o->hp.mode = mode_option(o->mode);
                   r.seed("train", o->hp.seed);
                   r.parameter("hyperparams", {{"learning_rate", o->hp.learning_rate},
                                               {"l2", o->hp.l2},
                                               {"max_epochs", o->hp.max_epochs},
                                               {"batch_size", o->hp.batch_size},
                                               {"patience", o->hp.patience},
                                               {"dim", o->hp.dim},
                                               {"mode", std::string(to_string(o->hp.mode))}});
                   if (o->candidates > 0) {
                     if (o->pool_dir.empty()) throw UsageError("--candidates needs --pool-dir");
                     std::vector<FeatureMode> modes;
                     for (const auto& m : o->modes) modes.push_back(mode_option(m));
                     const auto cands = train_candidates(train, dev, o->hp, modes,
                                                         o->candidates, o->threads);
                     const fs::path dir = o->pool_dir;
                     std::vector<PoolEntry> entries;
                     ordered_json scores = ordered_json::object();
                     for (const auto& c : cands) {
                       const auto path = dir / (c.id + ".model");
                       write_output(path, [&](std::ostream& os) { save_model(os, c.model); }, r);
                       entries.push_back({c.id, path, std::nullopt, c.model.info().dev_macro_f1});
                       scores[c.id] = c.model.info().dev_macro_f1;
                     }
                     write_pool_manifest(dir / "pool.json", entries, r);
                     r.metric("dev_macro_f1", scores);
                     print(ctx, scores);
                     return;
                   }
                   if (o->output.empty()) throw UsageError("train needs --output or --candidates");
                   const auto model = train_baseline(train, dev, o->hp);
                   write_output(o->output, [&](std::ostream& os) { save_model(os, model); }, r);
                   const auto& info = model.info();
                   const ordered_json m = {{"train", train.size()},
                                           {"dev", dev.size()},
                                           {"epochs_run", info.epochs_run},
                                           {"best_epoch", info.best_epoch},
                                           {"dev_macro_f1", info.dev_macro_f1}};
                   r.metric("training", m);
                   print(ctx, m);
                 }});
}

// --------------------------------------------------------------- augment

void add_augment(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string human, auto_labeled, out_dir, translator = "mock", url;
    std::uint64_t seed = 1;
    unsigned threads = 1;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("augment", "Compose the augmented training sets");
  sub->add_option("--human", o->human, "Human-labeled training JSONL")->required();
  sub->add_option("--auto", o->auto_labeled, "Auto-labeled JSONL");
  sub->add_option("-o,--out-dir", o->out_dir, "Output directory")->required();
  sub->add_option("--translator", o->translator, "mock, identity or http")->capture_default_str();
  sub->add_option("--translator-url", o->url, "Translation service URL");
  sub->add_option("--seed", o->seed, "Oversampling seed")->capture_default_str();
  sub->add_option("--threads", o->threads, "Translation threads")->capture_default_str();
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   const auto human = load_dataset(o->human, r);
                   LabeledDataset autos;
                   if (!o->auto_labeled.empty()) autos = load_dataset(o->auto_labeled, r);
                   const auto translator = make_translator(o->translator, o->url);
                   r.seed("oversample", o->seed);
                   r.parameter("translator", o->translator);
                   BackTranslateOptions bt;
                   bt.threads = o->threads;
                   const auto sets = compose_training_sets(human, autos, *translator, o->seed, bt);
                   for (const auto& w : sets.warnings) r.warning(w);
                   const fs::path dir = o->out_dir;
                   const std::pair<const char*, const LabeledDataset*> files[] = {
                       {"human.jsonl", &sets.human},
                       {"with_auto.jsonl", &sets.with_auto},
                       {"with_oversample.jsonl", &sets.with_oversample},
                       {"with_backtranslation.jsonl", &sets.with_backtranslation},
                       {"all.jsonl", &sets.all}};
                   ordered_json sizes = ordered_json::object();
                   for (const auto& [name, d] : files) {
                     write_output(dir / name, [&](std::ostream& os) { write_dataset(os, *d); }, r);
                     sizes[name] = d->size();
                   }
                   const ordered_json m = {{"sizes", sizes},
                                           {"auto", autos.size()},
                                           {"oversample_duplicates", sets.oversample_duplicates},
                                           {"backtranslation_copies", sets.backtranslation_copies}};
                   r.metric("augment", m);
                   print(ctx, m);
                 }});
}

// ------------------------------------------------------------- autolabel

std::vector<std::pair<std::string, VoteCounts>> read_votes(const fs::path& path, RunReport& r) {
  auto in = open_or_throw(path);
  const auto table = csv::read(in, path.string());
  const auto c_id = table.column("tweet_id", path.string());
  std::array<std::size_t, kNumCoarse> cols{};
  for (auto c : kCoarseLabels) cols[index(c)] = table.column(to_string(c), path.string());
  std::vector<std::pair<std::string, VoteCounts>> out;
  for (const auto& [line, row] : table.rows) {
    VoteCounts v{};
    for (std::size_t k = 0; k < kNumCoarse; ++k) {
      const auto& f = row[cols[k]];
      std::size_t pos = 0;
      try {
        const long x = std::stol(f, &pos);
        if (pos != f.size() || x < 0) throw std::invalid_argument(f);
        v[k] = static_cast<std::size_t>(x);
      } catch (const std::exception&) {
        throw ParseError(path.string(), line, "bad vote count '" + f + "'");
      }
    }
    out.emplace_back(row[c_id], v);
  }
  r.input(path);
  return out;
}

void add_autolabel(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string pool, corpus, votes, output, exclude;
    AutoLabelConfig cfg;
    bool lenient = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("autolabel", "Self-label unlabeled tweets by pool agreement");
  sub->add_option("--pool", o->pool, "Pool manifest JSON (top-n by dev score are used)");
  sub->add_option("-c,--corpus", o->corpus, "Unlabeled corpus JSONL");
  sub->add_option("--exclude", o->exclude, "Labeled dataset whose ids are skipped");
  sub->add_option("--votes", o->votes, "Precomputed votes CSV: tweet_id,S,A,O");
  sub->add_option("-o,--output", o->output, "Auto-labeled output")->required();
  sub->add_option("-k,--agreement", o->cfg.agreement_threshold, "Votes needed")->capture_default_str();
  sub->add_option("-n,--pool-size", o->cfg.pool_size, "Pool size")->capture_default_str();
  sub->add_option("-m,--cap", o->cfg.per_class_cap, "Per-class cap")->capture_default_str();
  sub->add_option("--seed", o->cfg.seed, "Cap sampling seed")->capture_default_str();
  sub->add_option("--threads", o->cfg.threads, "Prediction threads")->capture_default_str();
  sub->add_flag("--lenient", o->lenient, "Skip bad corpus lines");
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   r.seed("autolabel", o->cfg.seed);
                   r.parameter("k", o->cfg.agreement_threshold);
                   r.parameter("n", o->cfg.pool_size);
                   r.parameter("cap", o->cfg.per_class_cap);
                   if (!o->votes.empty()) {
                     const auto votes = read_votes(o->votes, r);
                     std::vector<VoteCounts> v;
                     for (const auto& [id, c] : votes) v.push_back(c);
                     std::vector<AutoLabeled> records;
                     for (auto i : select_auto_labels(v, o->cfg)) {
                       records.push_back({votes[i].first,
                                          *agreed_label(v[i], o->cfg.agreement_threshold), v[i]});
                     }
                     write_output(o->output,
                                  [&](std::ostream& os) { write_auto_labels(os, records); }, r);
                     const ordered_json m = {{"considered", votes.size()},
                                             {"selected", records.size()}};
                     r.metric("autolabel", m);
                     print(ctx, m);
                     return;
                   }
                   if (o->pool.empty() || o->corpus.empty()) {
                     throw UsageError("autolabel needs --votes, or --pool with --corpus");
                   }
                   auto entries = read_pool_manifest(o->pool, r);
                   ParseOptions po;
                   po.strict = !o->lenient;
                   auto corpus = load_corpus(o->corpus, po, r);
                   if (!o->exclude.empty()) {
                     std::set<std::string> skip;
                     for (const auto& e : load_dataset(o->exclude, r)) skip.insert(e.tweet.id);
                     std::vector<Tweet> keep;
                     for (const auto& t : corpus) {
                       if (!skip.count(t.id)) keep.push_back(t);
                     }
                     corpus = Corpus(std::move(keep));
                   }
                   const auto pool = select_top_k(instantiate_pool(entries, r), o->cfg.pool_size);
                   const auto res = auto_label(pool, corpus, o->cfg);
                   for (const auto& w : res.warnings) r.warning(w);
                   write_output(o->output,
                                [&](std::ostream& os) { write_dataset(os, res.dataset); }, r);
                   ordered_json per = ordered_json::object();
                   for (auto c : kCoarseLabels) {
                     per[std::string(to_string(c))] = res.dataset.count(c);
                   }
                   const ordered_json m = {{"considered", res.considered},
                                           {"retained", res.retained},
                                           {"selected", res.dataset.size()},
                                           {"selected_per_class", per},
                                           {"skipped", res.skipped}};
                   r.metric("autolabel", m);
                   print(ctx, m);
                 }});
}

// -------------------------------------------------------------- ensemble

void add_ensemble(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string pool, corpus, output;
    std::size_t size = 15;
    bool lenient = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("ensemble", "Predict with a majority-vote ensemble");
  sub->add_option("--pool", o->pool, "Pool manifest JSON")->required();
  sub->add_option("-c,--corpus", o->corpus, "Corpus JSONL")->required();
  sub->add_option("-o,--output", o->output, "Predictions JSONL")->required();
  sub->add_option("--size", o->size, "Ensemble size (top by dev score)")->capture_default_str();
  sub->add_flag("--lenient", o->lenient, "Skip bad corpus lines");
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   r.parameter("size", o->size);
                   ParseOptions po;
                   po.strict = !o->lenient;
                   const auto corpus = load_corpus(o->corpus, po, r);
                   const auto pool = select_top_k(instantiate_pool(read_pool_manifest(o->pool, r), r),
                                                  o->size);
                   std::vector<Prediction> preds;
                   std::size_t failures = 0;
                   for (const auto& t : corpus) {
                     const auto v = ensemble_predict(pool, t);
                     Distribution mean{};
                     const double used = static_cast<double>(pool.size() - v.failed_members);
                     for (std::size_t k = 0; k < kNumCoarse; ++k) mean[k] = v.prob_sums[k] / used;
                     preds.push_back({t.id, v.label, mean, v.votes, v.failed_members});
                     failures += v.failed_members;
                   }
                   write_output(o->output,
                                [&](std::ostream& os) { write_predictions(os, preds); }, r);
                   ordered_json per = ordered_json::object();
                   for (auto c : kCoarseLabels) {
                     std::size_t n = 0;
                     for (const auto& p : preds) n += p.label == c;
                     per[std::string(to_string(c))] = n;
                   }
                   const ordered_json m = {{"predictions", preds.size()},
                                           {"per_class", per},
                                           {"member_failures", failures}};
                   r.metric("ensemble", m);
                   print(ctx, m);
                 }});
}

// ------------------------------------------------------------------ eval

metrics::ConfusionMatrix read_confusion(const fs::path& path, RunReport& r) {
  auto in = open_or_throw(path);
  const auto src = path.string();
  const auto table = csv::read(in, src);
  const auto c_gold = table.column("gold", src);
  std::array<std::size_t, kNumCoarse> cols{};
  for (auto c : kCoarseLabels) cols[index(c)] = table.column(to_string(c), src);
  metrics::ConfusionMatrix cm(kNumCoarse);
  std::set<LabelCoarse> seen;
  for (const auto& [line, row] : table.rows) {
    const auto g = parse_coarse(row[c_gold]);
    if (!g) throw ParseError(src, line, "bad gold label '" + row[c_gold] + "'");
    if (!seen.insert(*g).second) throw ParseError(src, line, "duplicate gold row");
    for (std::size_t k = 0; k < kNumCoarse; ++k) {
      const auto& f = row[cols[k]];
      std::size_t pos = 0;
      long x = -1;
      try {
        x = std::stol(f, &pos);
      } catch (const std::exception&) {
      }
      if (x < 0 || pos != f.size()) throw ParseError(src, line, "bad count '" + f + "'");
      cm.add(index(*g), k, static_cast<std::size_t>(x));
    }
  }
  r.input(path);
  return cm;
}

void add_eval(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string confusion, predictions, gold, model, dataset;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("eval", "Per-class and macro-F1 scores");
  sub->add_option("--confusion", o->confusion, "Confusion CSV: gold,S,A,O");
  sub->add_option("--predictions", o->predictions, "Predictions JSONL");
  sub->add_option("--gold", o->gold, "Gold dataset JSONL or label CSV");
  sub->add_option("--model", o->model, "Model file to evaluate on --dataset");
  sub->add_option("--dataset", o->dataset, "Labeled dataset JSONL");
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   metrics::ConfusionMatrix cm(kNumCoarse);
                   if (!o->confusion.empty()) {
                     cm = read_confusion(o->confusion, r);
                   } else if (!o->predictions.empty() && !o->gold.empty()) {
                     const auto gold = load_gold(o->gold, r);
                     auto in = open_or_throw(o->predictions);
                     const auto preds = read_predictions(in, o->predictions);
                     r.input(o->predictions);
                     std::size_t missing = 0;
                     for (const auto& p : preds) {
                       const auto it = gold.find(p.id);
                       if (it == gold.end()) {
                         ++missing;
                         continue;
                       }
                       cm.add(index(it->second), index(p.label));
                     }
                     if (missing) {
                       r.warning(std::to_string(missing) + " predictions have no gold label");
                     }
                   } else if (!o->model.empty() && !o->dataset.empty()) {
                     auto in = open_or_throw(o->model);
                     const BaselineClassifier model(load_model(in, o->model));
                     r.input(o->model);
                     cm = evaluate(model, load_dataset(o->dataset, r)).second;
                   } else {
                     throw UsageError(
                         "eval needs --confusion, --predictions with --gold, or --model with --dataset");
                   }
                   const auto m = metrics::macro_f1(cm);
                   for (const auto& w : m.warnings) r.warning(w);
                   const auto j = metrics_json(m, cm);
                   r.metric("eval", j);
                   print(ctx, j);
                 }});
}

// ---------------------------------------------------------------- trends

void add_trends(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::vector<std::string> datasets;
    std::string predictions, corpus, output, format = "wide";
    bool zero_fill = false, lenient = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("trends", "Daily label counts, S/A ratio and weekly averages");
  sub->add_option("-d,--dataset", o->datasets, "Labeled dataset JSONL (repeatable)");
  sub->add_option("--predictions", o->predictions, "Predictions JSONL (needs --corpus)");
  sub->add_option("-c,--corpus", o->corpus, "Corpus JSONL for prediction dates");
  sub->add_option("-o,--output", o->output, "Daily series CSV")->required();
  sub->add_option("--format", o->format, "wide or long")->capture_default_str();
  sub->add_flag("--zero-fill", o->zero_fill, "Insert zero days inside the range");
  sub->add_flag("--lenient", o->lenient, "Skip bad corpus lines");
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   if (o->format != "wide" && o->format != "long") {
                     throw UsageError("--format must be wide or long");
                   }
                   std::vector<trends::DatedLabel> items;
                   std::set<std::string> seen;
                   for (const auto& p : o->datasets) {
                     for (const auto& e : load_dataset(p, r)) {
                       if (seen.insert(e.tweet.id).second) items.push_back({e.tweet.created_at, e.label});
                     }
                   }
                   if (!o->predictions.empty()) {
                     if (o->corpus.empty()) throw UsageError("--predictions needs --corpus");
                     ParseOptions po;
                     po.strict = !o->lenient;
                     const auto corpus = load_corpus(o->corpus, po, r);
                     auto in = open_or_throw(o->predictions);
                     const auto preds = read_predictions(in, o->predictions);
                     r.input(o->predictions);
                     for (const auto& p : preds) {
                       const auto* t = corpus.find(p.id);
                       if (!t) throw DataError("prediction for unknown tweet '" + p.id + "'");
                       if (seen.insert(p.id).second) items.push_back({t->created_at, p.label});
                     }
                   }
                   if (items.empty()) throw UsageError("trends needs --dataset or --predictions");
                   auto series = trends::daily_counts(items);
                   if (o->zero_fill) series = trends::zero_fill(series);
                   write_output(o->output, [&](std::ostream& os) {
                     if (o->format == "wide") {
                       trends::write_daily_csv(os, series);
                     } else {
                       trends::write_long_csv(os, series);
                     }
                   }, r);
                   const auto m = trends_summary(series);
                   r.metric("trends", m);
                   print(ctx, m);
                 }});
}

// ------------------------------------------------------------- correlate

void add_correlate(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string daily, series, metric = "A", from, to;
    unsigned smooth = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("correlate", "Spearman correlation of a label series with external data");
  sub->add_option("--daily", o->daily, "Daily CSV written by `trends`")->required();
  sub->add_option("--series", o->series, "External series CSV: date,value")->required();
  sub->add_option("--metric", o->metric, "S, A, O or sa_ratio")->capture_default_str();
  sub->add_option("--smooth", o->smooth, "Moving-average window for both series (0 = raw)")
      ->capture_default_str();
  sub->add_option("--from", o->from, "First date (YYYY-MM-DD)");
  sub->add_option("--to", o->to, "Last date (YYYY-MM-DD)");
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   const auto daily = read_daily_csv(o->daily, r);
                   const auto external = load_series(o->series, r);
                   const auto res = correlate(daily, external, o->metric, o->smooth,
                                              date_option(o->from, "--from"),
                                              date_option(o->to, "--to"));
                   r.parameter("metric", o->metric);
                   r.parameter("smooth", o->smooth);
                   r.metric("correlation", res);
                   print(ctx, res);
                 }});
}

// -------------------------------------------------------------- pipeline

void add_pipeline(CLI::App& app, Context& ctx, std::vector<Command>& out) {
  struct Opts {
    std::string config, out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("pipeline", "Run the full workflow from a JSON config");
  sub->add_option("--config", o->config, "Run config JSON")->required();
  sub->add_option("-o,--out-dir", o->out_dir, "Output directory")->required();
  sub->add_option("--seed", o->seed, "Override the config seed");
  sub->add_option("--threads", o->threads, "Override the config thread count");
  out.push_back({sub, [o, &ctx](RunReport& r) {
                   if (ctx.report_path.empty()) {
                     ctx.report_path = fs::path(o->out_dir) / "run_report.json";
                   }
                   auto cfg = load_config(o->config);
                   r.input(o->config);
                   if (o->seed) {
                     cfg.seed = *o->seed;
                     cfg.baseline.seed = cfg.autolabel.seed = *o->seed;
                   }
                   if (o->threads) cfg.threads = cfg.autolabel.threads = *o->threads;
                   run_pipeline(cfg, o->out_dir, r);
                   if (!ctx.quiet) {
                     std::cout << r.metrics().dump(2) << '\n';
                   }
                 }});
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app, Context& ctx) {
  std::vector<Command> out;
  add_ingest(app, ctx, out);
  add_hashtags(app, ctx, out);
  add_aggregate(app, ctx, out);
  add_agreement(app, ctx, out);
  add_splits(app, ctx, out);
  add_train(app, ctx, out);
  add_augment(app, ctx, out);
  add_autolabel(app, ctx, out);
  add_ensemble(app, ctx, out);
  add_eval(app, ctx, out);
  add_trends(app, ctx, out);
  add_correlate(app, ctx, out);
  add_pipeline(app, ctx, out);
  return out;
}

}  // namespace solidarity::cli
