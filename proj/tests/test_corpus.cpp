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


#include <regex>
#include <sstream>

#include "doctest.h"

#include "solidarity/corpus.hpp"
#include "solidarity/error.hpp"
#include "solidarity/rng.hpp"
#include "solidarity/text.hpp"

using namespace solidarity;

namespace {

Corpus parse(const std::string& jsonl, bool strict = true) {
  std::istringstream in(jsonl);
  ParseOptions opt;
  opt.strict = strict;
  return parse_corpus(in, opt).corpus;
}

std::string line(const std::string& id, const std::string& text,
                 const std::string& lang = "de",
                 const std::string& ts = "2020-03-03T10:00:00Z") {
  return R"({"id":")" + id + R"(","text":")" + text + R"(","lang":")" + lang +
         R"(","created_at":")" + ts + "\"}\n";
}

Tweet tw(const std::string& id, const std::string& text) {
  return make_tweet(id, text, Lang::En, *parse_timestamp("2020-03-01"));
}

}  // namespace

TEST_CASE("parse_corpus basics") {
  CHECK(parse("").empty());

  const auto c = parse(line("1", "Helft jetzt! #LeaveNoOneBehind"));
  REQUIRE(c.size() == 1);
  CHECK(c[0].hashtags == std::vector<std::string>{"leavenoonebehind"});
  CHECK(c[0].lang == Lang::De);
  CHECK(c.find("1") == &c[0]);
  CHECK(c.find("nope") == nullptr);
}

TEST_CASE("parse_corpus preserves order and handles offsets") {
  const auto c = parse(line("b", "x", "en", "2020-03-03T01:00:00+02:00") +
                       line("a", "y", "en", "2020-03-02T23:00:00Z"));
  REQUIRE(c.size() == 2);
  CHECK(c[0].id == "b");
  CHECK(c[1].id == "a");
  CHECK(c[0].created_at == c[1].created_at);
}

TEST_CASE("duplicate id names the second line") {
  const std::string input = line("42", "first") + line("42", "second");
  std::istringstream in(input);
  try {
    parse_corpus(in, {}, "c.jsonl");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("duplicate id '42'") != std::string::npos);
  }

  // Oracle: linear scan with a seen-set over random id sequences.
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::string jsonl;
    std::set<std::string> seen;
    std::size_t expected_line = 0;
    for (std::size_t i = 1; i <= 20; ++i) {
      const auto id = std::to_string(rng.uniform_below(30));
      jsonl += line(id, "t");
      if (!seen.insert(id).second && expected_line == 0) expected_line = i;
    }
    std::istringstream s(jsonl);
    if (expected_line == 0) {
      CHECK(parse_corpus(s).corpus.size() == 20);
    } else {
      try {
        parse_corpus(s);
        FAIL("expected duplicate");
      } catch (const ParseError& e) {
        CHECK(e.line() == expected_line);
      }
    }
  }
}

TEST_CASE("strict vs lenient errors") {
  const std::string bad = line("1", "ok") + "{not json\n" +
                          R"({"id":"2","text":"x","lang":"fr","created_at":"2020-03-03"})" +
                          "\n" + R"({"id":"3","text":"","lang":"en","created_at":"2020-03-03"})" +
                          "\n" + R"({"id":"4","lang":"en","created_at":"2020-03-03"})" +
                          "\n" + line("5", "late", "en", "2150-01-01T00:00:00Z") +
                          line("1", "dup") + line("6", "fine");
  {
    std::istringstream in(bad);
    CHECK_THROWS_AS(parse_corpus(in), ParseError);
  }
  std::istringstream in(bad);
  ParseOptions opt;
  opt.strict = false;
  const auto r = parse_corpus(in, opt, "bad.jsonl");
  CHECK(r.corpus.size() == 2);
  CHECK(r.skipped == 6);
  REQUIRE(r.diagnostics.size() == 6);
  CHECK(r.diagnostics[0].rfind("bad.jsonl:2:", 0) == 0);
  CHECK(r.diagnostics[1].find("unsupported lang") != std::string::npos);
  CHECK(r.diagnostics[2].find("empty") != std::string::npos);
  CHECK(r.diagnostics[3].find("missing") != std::string::npos);
  CHECK(r.diagnostics[4].find("validity window") != std::string::npos);
}

TEST_CASE("extract_hashtags") {
  CHECK(extract_hashtags("no tags here").empty());
  CHECK(extract_hashtags("Go #RefugeesWelcome! #EU #refugeeswelcome") ==
        std::vector<std::string>{"refugeeswelcome", "eu"});
  CHECK(extract_hashtags("#Flüchtlinge, #wirschaffendas.") ==
        std::vector<std::string>{"flüchtlinge", "wirschaffendas"});
  CHECK(extract_hashtags("# alone ## #a_b1 x#y") ==
        std::vector<std::string>{"a_b1", "y"});
  CHECK(extract_hashtags("#ÖSTERREICH") == std::vector<std::string>{"österreich"});
}

TEST_CASE("extract_hashtags agrees with a regex scan on ASCII text") {
  // Oracle: std::regex over the ASCII subset, lowercased, deduplicated.
  const std::regex re("#([A-Za-z0-9_]+)");
  Rng rng(11);
  const std::string alphabet = "ab_Z9 #!,.";
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    const auto len = rng.uniform_below(40);
    for (std::uint64_t i = 0; i < len; ++i) {
      s.push_back(alphabet[rng.uniform_below(alphabet.size())]);
    }
    std::vector<std::string> expected;
    std::set<std::string> seen;
    for (auto it = std::sregex_iterator(s.begin(), s.end(), re);
         it != std::sregex_iterator(); ++it) {
      auto tag = text::to_lower((*it)[1].str());
      if (seen.insert(tag).second) expected.push_back(tag);
    }
    CHECK_MESSAGE(extract_hashtags(s) == expected, s);
  }
}

TEST_CASE("extract_hashtags is case invariant") {
  for (const char* s : {"#Flüchtlinge und #EU", "Mix #aBc #ABC #Ärger",
                        "#wir_schaffen_DAS"}) {
    const std::string str = s;
    CHECK(extract_hashtags(str) == extract_hashtags(text::to_lower(str)));
    CHECK(extract_hashtags(str) == extract_hashtags(text::to_upper(str)));
  }
}

TEST_CASE("hashtags occur in the text") {
  const auto t = tw("1", "Hallo #Wir_Schaffen_Das und #EU2020, #eu2020");
  const auto lowered = text::to_lower(t.text);
  for (const auto& h : t.hashtags) {
    CHECK(lowered.find("#" + h) != std::string::npos);
  }
}

TEST_CASE("expand_hashtags") {
  const Corpus c({tw("1", "#a #b"), tw("2", "#a #b"), tw("3", "#a #c")});
  CHECK(expand_hashtags(c, {"zzz"}, 1).empty());
  CHECK(expand_hashtags(c, {"a"}, 2) == std::vector<HashtagCount>{{"b", 2}});
  CHECK(expand_hashtags(c, {"#A"}, 1) ==
        std::vector<HashtagCount>{{"b", 2}, {"c", 1}});
  CHECK_THROWS_AS(expand_hashtags(c, {}, 1), UsageError);
  CHECK_THROWS_AS(expand_hashtags(c, {"a"}, 0), UsageError);
}

TEST_CASE("expand_hashtags matches exhaustive pair counting") {
  Rng rng(3);
  const std::vector<std::string> tags = {"a", "b", "c", "d", "e", "f"};
  std::vector<Tweet> tweets;
  for (int i = 0; i < 200; ++i) {
    std::string text = "t";
    for (const auto& tag : tags) {
      if (rng.uniform_below(3) == 0) text += " #" + tag;
    }
    tweets.push_back(tw(std::to_string(i), text));
  }
  const Corpus c(tweets);
  const std::set<std::string> seeds = {"a", "b"};
  for (std::size_t threshold = 1; threshold < 60; threshold += 7) {
    std::map<std::string, std::size_t> oracle;
    for (const auto& t : c) {
      bool seeded = false;
      for (const auto& s : seeds) {
        seeded |= std::find(t.hashtags.begin(), t.hashtags.end(), s) !=
                  t.hashtags.end();
      }
      if (!seeded) continue;
      for (const auto& tag : tags) {
        if (seeds.count(tag)) continue;
        if (std::find(t.hashtags.begin(), t.hashtags.end(), tag) !=
            t.hashtags.end()) {
          ++oracle[tag];
        }
      }
    }
    const auto got = expand_hashtags(c, seeds, threshold);
    std::size_t expected_size = 0;
    for (const auto& [tag, n] : oracle) expected_size += n >= threshold;
    CHECK(got.size() == expected_size);
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].count == oracle[got[i].hashtag]);
      if (i) {
        CHECK((got[i - 1].count > got[i].count ||
               (got[i - 1].count == got[i].count &&
                got[i - 1].hashtag < got[i].hashtag)));
      }
    }
    // Lower thresholds return supersets.
    if (threshold > 1) {
      const auto looser = expand_hashtags(c, seeds, threshold - 1);
      for (const auto& h : got) {
        CHECK(std::find(looser.begin(), looser.end(), h) != looser.end());
      }
    }
  }
}

TEST_CASE("filter_by_hashtags") {
  const Corpus c({tw("1", "#eurobonds now"), tw("2", "#eu"),
                  tw("3", "plain"), tw("4", "#x #EuroBonds"), tw("5", "#y")});
  const auto kept = filter_by_hashtags(c, {"eurobonds"});
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].id == "1");
  CHECK(kept[1].id == "4");
  CHECK(filter_by_hashtags(c, {}).empty());
  CHECK(filter_by_hashtags(kept, {"eurobonds"}) == kept);

  const Corpus tagged({tw("1", "#a"), tw("2", "#b #a")});
  CHECK(filter_by_hashtags(tagged, {"a", "b"}) == tagged);
}

TEST_CASE("write/parse round trip") {
  const auto c = parse(line("1", "Helft #jetzt", "de", "2020-03-03T01:00:00+01:00") +
                       line("2", "quote \\\" and \\\\ slash", "en") +
                       line("3", "Ünïcödé #Straße", "de"));
  std::ostringstream out;
  write_corpus(out, c);
  std::istringstream back(out.str());
  CHECK(parse_corpus(back).corpus == c);
}

TEST_CASE("hashtag report CSV") {
  std::ostringstream out;
  write_hashtag_report(out, {{"b", 2}, {"a,c", 1}});
  CHECK(out.str() == "hashtag,count\nb,2\n\"a,c\",1\n");
}
