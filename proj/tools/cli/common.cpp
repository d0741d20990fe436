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


#include "common.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <locale>
#include <sstream>
#include <thread>

#include "solidarity/baseline.hpp"
#include "solidarity/csv.hpp"
#include "solidarity/endpoint.hpp"
#include "solidarity/error.hpp"
#include "solidarity/io.hpp"

#include "config.hpp"

namespace solidarity::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

std::string format_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  os << v;
  return os.str();
}

Corpus load_corpus(const fs::path& path, const ParseOptions& options,
                   RunReport& report) {
  auto in = open_input(path);
  auto r = parse_corpus(in, options, path.string());
  report.input(path);
  for (auto& d : r.diagnostics) report.warning(std::move(d));
  return std::move(r.corpus);
}

std::vector<Annotation> load_annotations(const fs::path& path, RunReport& report) {
  auto in = open_input(path);
  auto rows = read_annotations(in, path.string());
  report.input(path);
  return rows;
}

Adjudications load_adjudications(const fs::path& path, RunReport& report) {
  auto in = open_input(path);
  auto a = read_adjudications(in, path.string());
  report.input(path);
  return a;
}

LabeledDataset load_dataset(const fs::path& path, RunReport& report) {
  auto in = open_input(path);
  auto d = read_dataset(in, path.string());
  report.input(path);
  return d;
}

trends::ExternalSeries load_series(const fs::path& path, RunReport& report) {
  auto in = open_input(path);
  auto s = trends::read_series(in, path.string());
  report.input(path);
  return s;
}

void write_output(const fs::path& path,
                  const std::function<void(std::ostream&)>& writer,
                  RunReport& report) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  io::write_atomic(path, writer);
  report.output(path);
}

void write_json(const fs::path& path, const ordered_json& j, RunReport& report) {
  write_output(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; }, report);
}

HumanLabels build_human_labels(std::span<const Annotation> expert,
                               const Adjudications& adjudications,
                               std::span<const Annotation> crowd,
                               Granularity granularity) {
  HumanLabels h;
  h.gold = build_gold(expert, adjudications);
  h.reliability = compute_reliability(crowd, h.gold, granularity);
  ProfileMap profiles;
  for (const auto& [id, rel] : h.reliability) {
    profiles[id] = {id, AnnotatorKind::Crowd, rel};
  }
  std::vector<Annotation> pending;
  for (const auto& a : crowd) {
    if (h.gold.labels.count(a.tweet_id) || h.gold.excluded.count(a.tweet_id)) {
      continue;
    }
    pending.push_back(a);
  }
  h.crowd = aggregate_all(pending, profiles);
  std::set<std::string> overridden;
  for (const auto& a : crowd) {
    if (h.gold.labels.count(a.tweet_id)) overridden.insert(a.tweet_id);
  }
  h.crowd_overridden = overridden.size();
  return h;
}

LabeledDataset human_dataset(const Corpus& corpus, const HumanLabels& labels,
                             RunReport& report) {
  LabeledDataset d;
  std::size_t found = 0;
  for (const auto& t : corpus) {
    if (const auto it = labels.gold.labels.find(t.id); it != labels.gold.labels.end()) {
      d.push_back({t, collapse_label(it->second), Provenance::Expert});
      ++found;
    } else if (const auto c = labels.crowd.find(t.id); c != labels.crowd.end()) {
      d.push_back({t, collapse_label(c->second), Provenance::Crowd});
      ++found;
    }
  }
  const std::size_t labeled = labels.gold.labels.size() + labels.crowd.size();
  if (found < labeled) {
    report.warning(std::to_string(labeled - found) +
                   " labeled tweet ids are missing from the corpus");
  }
  return d;
}

void write_labels_csv(std::ostream& out, const HumanLabels& labels) {
  out << "tweet_id,label_fine,label,source\n";
  for (const auto& [id, l] : labels.gold.labels) {
    csv::write_row(out, {id, std::string(to_string(l)),
                         std::string(to_string(collapse_label(l))), "expert"});
  }
  for (const auto& [id, l] : labels.crowd) {
    csv::write_row(out, {id, std::string(to_string(l)),
                         std::string(to_string(collapse_label(l))), "crowd"});
  }
}

std::map<std::string, LabelCoarse> read_labels_csv(std::istream& in,
                                                   const std::string& source) {
  const auto table = csv::read(in, source);
  const auto c_id = table.column("tweet_id", source);
  const auto c_label = table.column("label", source);
  std::map<std::string, LabelCoarse> out;
  for (const auto& [line, row] : table.rows) {
    const auto l = parse_coarse(row[c_label]);
    if (!l) throw ParseError(source, line, "bad label '" + row[c_label] + "'");
    if (!out.emplace(row[c_id], *l).second) {
      throw ParseError(source, line, "duplicate tweet id '" + row[c_id] + "'");
    }
  }
  return out;
}

void write_predictions(std::ostream& out, std::span<const Prediction> preds) {
  for (const auto& p : preds) {
    ordered_json j;
    j["id"] = p.id;
    j["label"] = std::string(to_string(p.label));
    j["scores"] = {{"S", p.scores[0]}, {"A", p.scores[1]}, {"O", p.scores[2]}};
    if (p.votes) {
      j["votes"] = {{"S", (*p.votes)[0]}, {"A", (*p.votes)[1]}, {"O", (*p.votes)[2]}};
      j["failed_members"] = p.failed_members;
    }
    out << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

std::vector<Prediction> read_predictions(std::istream& in, const std::string& source) {
  std::vector<Prediction> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = json::parse(line);
      Prediction p;
      p.id = j.at("id").get<std::string>();
      const auto l = parse_coarse(j.at("label").get<std::string>());
      if (!l) throw ParseError(source, lineno, "bad label");
      p.label = *l;
      if (j.contains("scores")) {
        for (auto c : kCoarseLabels) {
          p.scores[index(c)] = j["scores"].at(std::string(to_string(c))).get<double>();
        }
      }
      out.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw ParseError(source, lineno, std::string("malformed prediction: ") + e.what());
    }
  }
  return out;
}

std::map<std::string, LabelCoarse> load_gold(const fs::path& path, RunReport& report) {
  std::map<std::string, LabelCoarse> gold;
  if (path.extension() == ".jsonl") {
    for (const auto& e : load_dataset(path, report)) gold[e.tweet.id] = e.label;
    return gold;
  }
  auto in = open_input(path);
  gold = read_labels_csv(in, path.string());
  report.input(path);
  return gold;
}

std::vector<PoolEntry> read_pool_manifest(const fs::path& path, RunReport& report) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, std::string("malformed pool manifest: ") + e.what());
  }
  report.input(path);
  if (!j.contains("models") || !j["models"].is_array()) {
    throw DataError(path.string() + ": pool manifest needs a \"models\" array");
  }
  std::vector<PoolEntry> out;
  for (const auto& m : j["models"]) {
    PoolEntry e;
    try {
      e.id = m.at("id").get<std::string>();
      if (m.contains("path")) {
        const fs::path p = m["path"].get<std::string>();
        e.model_path = p.is_absolute() ? p : path.parent_path() / p;
      } else if (m.contains("endpoint")) {
        e.endpoint = m["endpoint"];
      } else {
        throw DataError(path.string() + ": model '" + e.id + "' needs path or endpoint");
      }
      if (m.contains("dev_score") && !m["dev_score"].is_null()) {
        e.dev_score = m["dev_score"].get<double>();
      }
    } catch (const json::exception& ex) {
      throw DataError(path.string() + ": bad pool entry: " + ex.what());
    }
    out.push_back(std::move(e));
  }
  return out;
}

void write_pool_manifest(const fs::path& path, std::span<const PoolEntry> entries,
                         RunReport& report) {
  ordered_json models = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json m;
    m["id"] = e.id;
    if (e.endpoint) {
      m["endpoint"] = *e.endpoint;
    } else {
      m["path"] = fs::relative(e.model_path, path.parent_path()).generic_string();
    }
    m["dev_score"] = e.dev_score ? ordered_json(*e.dev_score) : ordered_json(nullptr);
    models.push_back(std::move(m));
  }
  write_json(path, {{"models", models}}, report);
}

ModelPool instantiate_pool(std::span<const PoolEntry> entries, RunReport& report) {
  ModelPool pool;
  for (const auto& e : entries) {
    if (e.endpoint) {
      ExternalEndpoint ep;
      const auto& j = *e.endpoint;
      const auto transport = j.value("transport", std::string("subprocess"));
      if (transport == "subprocess") {
        ep.transport = Transport::Subprocess;
        ep.command = j.at("command").get<std::vector<std::string>>();
      } else if (transport == "http") {
        ep.transport = Transport::Http;
        ep.url = j.at("url").get<std::string>();
      } else {
        throw DataError("model '" + e.id + "': unknown transport '" + transport + "'");
      }
      ep.timeout = std::chrono::milliseconds(j.value("timeout_ms", 5000));
      pool.push_back({e.id, make_external_classifier(std::move(ep)), e.dev_score});
      continue;
    }
    auto in = open_input(e.model_path);
    auto model = load_model(in, e.model_path.string());
    report.input(e.model_path);
    pool.push_back({e.id, std::make_shared<BaselineClassifier>(std::move(model)),
                    e.dev_score});
  }
  validate_pool(pool);
  return pool;
}

std::unique_ptr<Translator> make_translator(const std::string& kind,
                                            const std::string& url) {
  if (kind == "mock") return std::make_unique<MockTranslator>();
  if (kind == "identity") return std::make_unique<IdentityTranslator>();
  if (kind == "http") {
    HttpTranslatorConfig cfg;
    cfg.url = url;
    return std::make_unique<HttpTranslator>(cfg);
  }
  throw UsageError("translator must be mock, identity or http, got '" + kind + "'");
}

ordered_json metrics_json(const metrics::MetricsReport& m,
                          const metrics::ConfusionMatrix& cm) {
  ordered_json per = ordered_json::object();
  for (auto c : kCoarseLabels) {
    const auto& s = m.per_class[index(c)];
    per[std::string(to_string(c))] = {{"precision", s.precision},
                                      {"recall", s.recall},
                                      {"f1", s.f1},
                                      {"support", s.support}};
  }
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < cm.size(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < cm.size(); ++c) row.push_back(cm.at(r, c));
    rows.push_back(row);
  }
  return {{"macro_f1", m.macro_f1},
          {"accuracy", m.accuracy},
          {"n", m.n},
          {"per_class", per},
          {"confusion", rows}};
}

}  // namespace solidarity::cli

namespace solidarity::cli {

ordered_json splits_json(std::span<const SplitManifest> splits, std::uint64_t seed) {
  ordered_json arr = ordered_json::array();
  for (const auto& m : splits) {
    arr.push_back({{"index", m.index},
                   {"seed", m.seed},
                   {"expert_train", m.expert_train},
                   {"dev", m.dev},
                   {"test", m.test},
                   {"train", m.train}});
  }
  return {{"seed", seed}, {"resampling", "independent_per_split"}, {"splits", arr}};
}

std::vector<SplitManifest> read_splits(const fs::path& path, RunReport& report) {
  std::vector<SplitManifest> out;
  try {
    const auto j = json::parse(io::read_file(path));
    for (const auto& s : j.at("splits")) {
      SplitManifest m;
      m.index = s.at("index").get<std::size_t>();
      m.seed = s.at("seed").get<std::uint64_t>();
      m.expert_train = s.at("expert_train").get<std::size_t>();
      m.dev = s.at("dev").get<std::vector<std::string>>();
      m.test = s.at("test").get<std::vector<std::string>>();
      m.train = s.at("train").get<std::vector<std::string>>();
      out.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": bad split manifest: " + e.what());
  }
  report.input(path);
  return out;
}

ordered_json agreement_json(std::span<const Annotation> rows, Granularity granularity) {
  std::map<std::string, std::size_t> items;
  std::map<std::string, std::size_t> raters;
  for (const auto& a : rows) {
    items.emplace(a.tweet_id, items.size());
    raters.emplace(a.annotator_id, raters.size());
  }
  metrics::RatingMatrix m(raters.size(),
                          std::vector<std::optional<int>>(items.size()));
  for (const auto& a : rows) {
    const int v = granularity == Granularity::ThreeClass
                      ? static_cast<int>(index(collapse_label(a.label)))
                      : static_cast<int>(index(a.label));
    m[raters[a.annotator_id]][items[a.tweet_id]] = v;
  }
  const auto pk = metrics::mean_pairwise_kappa(m);
  ordered_json skipped = ordered_json::array();
  std::vector<std::string> names(raters.size());
  for (const auto& [name, i] : raters) names[i] = name;
  for (const auto& [a, b] : pk.skipped_pairs) skipped.push_back({names[a], names[b]});
  return {{"granularity", to_string(granularity)},
          {"items", items.size()},
          {"annotators", raters.size()},
          {"mean_pairwise_kappa", pk.mean_kappa},
          {"pairs_used", pk.pairs_used},
          {"skipped_pairs", skipped},
          {"method", pk.method},
          {"fleiss_kappa", metrics::fleiss_kappa(m)}};
}

std::vector<Candidate> train_candidates(const LabeledDataset& train,
                                        const LabeledDataset& dev,
                                        const BaselineHyperparams& base,
                                        std::span<const FeatureMode> modes,
                                        std::size_t count, unsigned threads) {
  if (modes.empty()) throw UsageError("candidate pool needs at least one feature mode");
  static constexpr std::array<double, 3> kRateScale = {1.0, 0.5, 2.0};
  std::vector<Candidate> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      auto hp = base;
      hp.mode = modes[i % modes.size()];
      hp.learning_rate = base.learning_rate * kRateScale[(i / modes.size()) % kRateScale.size()];
      hp.seed = base.seed * 1000 + i;
      try {
        char id[32];
        std::snprintf(id, sizeof id, "cand%02zu", i);
        out[i] = {id, train_baseline(train, dev, hp)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

ModelPool as_pool(std::span<const Candidate> candidates) {
  ModelPool pool;
  for (const auto& c : candidates) {
    pool.push_back({c.id, std::make_shared<BaselineClassifier>(c.model),
                    c.model.info().dev_macro_f1});
  }
  return pool;
}

std::pair<metrics::MetricsReport, metrics::ConfusionMatrix> evaluate(
    const Classifier& model, const LabeledDataset& d) {
  metrics::ConfusionMatrix cm(kNumCoarse);
  for (const auto& e : d) {
    cm.add(index(e.label), index(argmax(model.predict(e.tweet))));
  }
  return {metrics::macro_f1(cm), cm};
}

}  // namespace solidarity::cli

namespace solidarity::cli {

ordered_json trends_summary(const trends::DailySeries& series) {
  trends::DayCounts totals{};
  for (const auto& [d, c] : series) {
    for (std::size_t k = 0; k < kNumCoarse; ++k) totals[k] += c[k];
  }
  const auto a = totals[index(LabelCoarse::A)];
  const std::array<LabelCoarse, 1> s_only = {LabelCoarse::S};
  const std::array<LabelCoarse, 1> a_only = {LabelCoarse::A};
  const auto ws = trends::weekly_average(series, s_only);
  const auto wa = trends::weekly_average(series, a_only);
  std::size_t partial = 0;
  for (const auto& w : ws.weeks) partial += w.partial;
  ordered_json j;
  j["days"] = series.size();
  if (!series.empty()) {
    j["first"] = format_date(series.begin()->first);
    j["last"] = format_date(series.rbegin()->first);
  }
  j["totals"] = {{"S", totals[0]}, {"A", totals[1]}, {"O", totals[2]}};
  j["sa_ratio"] = a ? ordered_json(static_cast<double>(totals[0]) / static_cast<double>(a))
                    : ordered_json(nullptr);
  j["weekly_mean_S"] = ws.mean;
  j["weekly_mean_A"] = wa.mean;
  j["weeks"] = ws.weeks.size();
  j["partial_weeks"] = partial;
  return j;
}

trends::DailySeries read_daily_csv(const fs::path& path, RunReport& report) {
  auto in = open_input(path);
  const auto src = path.string();
  const auto table = csv::read(in, src);
  const auto c_date = table.column("date", src);
  std::array<std::size_t, kNumCoarse> cols{};
  for (auto c : kCoarseLabels) cols[index(c)] = table.column(to_string(c), src);
  trends::DailySeries out;
  for (const auto& [line, row] : table.rows) {
    const auto d = parse_date(row[c_date]);
    if (!d) throw ParseError(src, line, "bad date '" + row[c_date] + "'");
    trends::DayCounts c{};
    for (std::size_t k = 0; k < kNumCoarse; ++k) {
      const auto& f = row[cols[k]];
      std::size_t pos = 0;
      long x = -1;
      try {
        x = std::stol(f, &pos);
      } catch (const std::exception&) {
      }
      if (x < 0 || pos != f.size()) throw ParseError(src, line, "bad count '" + f + "'");
      c[k] = static_cast<std::size_t>(x);
    }
    if (!out.emplace(*d, c).second) throw ParseError(src, line, "duplicate date");
  }
  report.input(path);
  return out;
}

ordered_json correlate(const trends::DailySeries& daily,
                       const trends::ExternalSeries& external,
                       const std::string& metric, unsigned smooth,
                       std::optional<Date> from, std::optional<Date> to) {
  trends::ExternalSeries x;
  if (metric == "sa_ratio") {
    x = trends::ratio_values(trends::sa_ratio(daily));
  } else if (const auto l = parse_coarse(metric)) {
    x = trends::label_series(daily, *l);
  } else {
    throw UsageError("metric must be S, A, O or sa_ratio, got '" + metric + "'");
  }
  auto y = external;
  if (smooth > 0) {
    x = trends::moving_average(x, smooth);
    y = trends::moving_average(y, smooth);
  }
  const auto r = trends::spearman(x, y, from, to);
  auto opt_date = [](const std::optional<Date>& d) {
    return d ? ordered_json(format_date(*d)) : ordered_json(nullptr);
  };
  return {{"metric", metric},
          {"smooth", smooth},
          {"from", opt_date(from)},
          {"to", opt_date(to)},
          {"rho", r.rho},
          {"n", r.n},
          {"method", r.method}};
}

}  // namespace solidarity::cli
