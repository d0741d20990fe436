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


#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "doctest.h"

#include "httplib.h"
#include "json.hpp"

#include "solidarity/augment.hpp"
#include "solidarity/error.hpp"

using namespace solidarity;

namespace {

LabeledExample ex(const std::string& id, LabelCoarse l, Provenance p,
                  Lang lang = Lang::En) {
  return {make_tweet(id, "text of " + id + " #tag", lang,
                     *parse_timestamp("2020-03-0" + std::to_string(1 + id.size() % 9) + "T12:00:00Z")),
          l, p};
}

LabeledDataset with_counts(std::size_t s, std::size_t a, std::size_t o,
                           Provenance p = Provenance::Crowd) {
  LabeledDataset d;
  for (std::size_t i = 0; i < s; ++i) d.push_back(ex("s" + std::to_string(i), LabelCoarse::S, p));
  for (std::size_t i = 0; i < a; ++i) d.push_back(ex("a" + std::to_string(i), LabelCoarse::A, p));
  for (std::size_t i = 0; i < o; ++i) d.push_back(ex("o" + std::to_string(i), LabelCoarse::O, p));
  return d;
}

class FlakyTranslator final : public Translator {
 public:
  std::string translate(std::string_view text, Lang, Lang) const override {
    if (text.find("a1 ") != std::string_view::npos) {
      throw EndpointError("service unavailable");
    }
    return std::string(text);
  }
};

}  // namespace

TEST_CASE("oversample balances to the majority count") {
  const auto d = with_counts(768, 209, 403);
  const auto out = oversample(d, 7);
  CHECK(out.count(LabelCoarse::S) == 768);
  CHECK(out.count(LabelCoarse::A) == 768);
  CHECK(out.count(LabelCoarse::O) == 768);
  CHECK(out.size() == 2304);
  CHECK(out.size() == 3 * 768);
  CHECK(out.count(Provenance::Oversample) == 2304 - 1380);

  // Originals first, untouched; duplicates copy text and label exactly.
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(out[i] == d[i]);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(ids.insert(out[i].tweet.id).second);
    if (i < d.size()) continue;
    const auto src_id = out[i].tweet.id.substr(0, out[i].tweet.id.find("#os"));
    const auto it = std::find_if(d.begin(), d.end(), [&](const LabeledExample& e) {
      return e.tweet.id == src_id;
    });
    REQUIRE(it != d.end());
    CHECK(out[i].tweet.text == it->tweet.text);
    CHECK(out[i].label == it->label);
    CHECK(out[i].tweet.created_at == it->tweet.created_at);
  }
}

TEST_CASE("oversample determinism and edge cases") {
  const auto d = with_counts(10, 3, 5);
  CHECK(oversample(d, 1) == oversample(d, 1));
  const auto other = oversample(d, 2);
  CHECK_FALSE(other == oversample(d, 1));
  CHECK(other.class_counts() == oversample(d, 1).class_counts());

  const auto balanced = with_counts(4, 4, 4);
  CHECK(oversample(balanced, 3) == balanced);

  CHECK_THROWS_AS(oversample(with_counts(3, 0, 2), 1), DataError);
}

TEST_CASE("back_translate size bookkeeping") {
  auto d = with_counts(5, 3, 2, Provenance::Expert);
  d.append(with_counts(1, 1, 1, Provenance::Auto));
  const IdentityTranslator identity;
  const auto r = back_translate(d, identity);
  CHECK(r.dataset.size() == d.size() + 10);
  CHECK(r.translated == 10);
  for (std::size_t i = d.size(); i < r.dataset.size(); ++i) {
    const auto& copy = r.dataset[i];
    const auto& src = d[i - d.size()];
    CHECK(copy.tweet.text == src.tweet.text);
    CHECK(copy.tweet.id == src.tweet.id + "#bt");
    CHECK(copy.label == src.label);
    CHECK(copy.tweet.created_at == src.tweet.created_at);
    CHECK(copy.provenance == Provenance::Backtranslation);
  }

  const auto dropped = back_translate(d, identity, {Lang::De, true, 1});
  CHECK(dropped.dataset.size() == d.size());
  CHECK(dropped.dropped_identical == 10);

  CHECK(back_translate(LabeledDataset{}, identity).dataset.empty());
}

TEST_CASE("back_translate round trips per source language") {
  LabeledDataset d;
  d.push_back(ex("en1", LabelCoarse::S, Provenance::Crowd, Lang::En));
  d.push_back(ex("de1", LabelCoarse::A, Provenance::Expert, Lang::De));
  const MockTranslator mock;
  const auto r = back_translate(d, mock, {Lang::De, false, 1});
  REQUIRE(r.dataset.size() == 4);
  // en -> de -> en; the second hop reverses the first reversal.
  CHECK(r.dataset[2].tweet.text == "[en] text of en1 #tag [de]");
  CHECK(r.dataset[2].tweet.text ==
        mock.translate(mock.translate(d[0].tweet.text, Lang::En, Lang::De),
                       Lang::De, Lang::En));
  // de -> en -> de for German sources.
  CHECK(r.dataset[3].tweet.text ==
        mock.translate(mock.translate(d[1].tweet.text, Lang::De, Lang::En),
                       Lang::En, Lang::De));
  CHECK(r.dataset[3].tweet.lang == Lang::De);
}

TEST_CASE("back_translate skips failures and keeps order under threads") {
  const auto d = with_counts(4, 4, 4, Provenance::Expert);
  const FlakyTranslator flaky;
  const auto r = back_translate(d, flaky, {Lang::De, false, 4});
  CHECK(r.failed == 1);
  CHECK(r.warnings.size() == 1);
  CHECK(r.dataset.size() == d.size() + 11);

  const MockTranslator mock;
  const auto seq = back_translate(d, mock, {Lang::De, false, 1});
  const auto par = back_translate(d, mock, {Lang::De, false, 8});
  CHECK(seq.dataset == par.dataset);
}

TEST_CASE("http translator against a local server") {
  httplib::Server server;
  std::atomic<int> calls{0};
  std::atomic<int> authorized{0};
  server.Post("/translate", [&](const httplib::Request& req, httplib::Response& res) {
    // First call fails with 503 to exercise the retry path.
    if (calls++ == 0) {
      res.status = 503;
      return;
    }
    if (req.get_header_value("Authorization") == "Bearer sekrit") ++authorized;
    const auto body = nlohmann::json::parse(req.body);
    const std::string out = body["q"].get<std::string>() + "|" +
                            body["source"].get<std::string>() + ">" +
                            body["target"].get<std::string>();
    res.set_content(nlohmann::json{{"text", out}}.dump(), "application/json");
  });
  server.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"nope\":1}", "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ::setenv("SOLIDARITY_TEST_KEY", "sekrit", 1);
  HttpTranslatorConfig cfg;
  cfg.url = "http://127.0.0.1:" + std::to_string(port) + "/translate";
  cfg.api_key_env = "SOLIDARITY_TEST_KEY";
  cfg.initial_backoff = std::chrono::milliseconds(1);
  cfg.max_requests_per_second = 1000.0;
  const HttpTranslator t(cfg);
  CHECK(t.translate("hallo", Lang::De, Lang::En) == "hallo|de>en");
  CHECK(calls == 2);
  CHECK(authorized == 1);

  HttpTranslatorConfig broken = cfg;
  broken.url = "http://127.0.0.1:" + std::to_string(port) + "/broken";
  CHECK_THROWS_AS(HttpTranslator(broken).translate("x", Lang::En, Lang::De),
                  EndpointError);

  HttpTranslatorConfig dead = cfg;
  dead.url = "http://127.0.0.1:1/translate";
  dead.max_attempts = 2;
  CHECK_THROWS_AS(HttpTranslator(dead).translate("x", Lang::En, Lang::De),
                  EndpointError);

  CHECK_THROWS_AS(HttpTranslator({.url = "ftp://x"}), UsageError);

  server.stop();
  th.join();
}

TEST_CASE("compose_training_sets bookkeeping") {
  auto human = with_counts(12, 5, 8, Provenance::Expert);
  human.append(with_counts(0, 0, 0));
  LabeledDataset autos;
  for (int i = 0; i < 9; ++i) {
    autos.push_back(ex("u" + std::to_string(i), static_cast<LabelCoarse>(i % 3),
                       Provenance::Auto));
  }
  const MockTranslator mock;
  const auto t = compose_training_sets(human, autos, mock, 3);
  CHECK(t.with_auto.size() == human.size() + autos.size());
  CHECK(t.oversample_duplicates == (12 - 5) + (12 - 8));
  CHECK(t.backtranslation_copies == human.size());
  CHECK(t.with_oversample.size() == t.with_auto.size() + t.oversample_duplicates);
  CHECK(t.with_backtranslation.size() == t.with_auto.size() + human.size());
  CHECK(t.all.size() == t.with_auto.size() + t.oversample_duplicates +
                            t.backtranslation_copies);
  CHECK(t.all.count(Provenance::Oversample) == t.oversample_duplicates);
  CHECK(t.all.count(Provenance::Backtranslation) == human.size());

  CHECK_THROWS_AS(compose_training_sets(autos, autos, mock, 3), UsageError);
}
