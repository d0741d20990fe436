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


// Writes the shipped synthetic fixture: a 500-tweet corpus with expert,
// adjudication and crowd annotations, an infection series, a run config and
// the small files used by the command-line tests.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "solidarity/csv.hpp"
#include "solidarity/io.hpp"
#include "solidarity/synthetic.hpp"

namespace fs = std::filesystem;
using namespace solidarity;

namespace {

void write_adjudications(std::ostream& os, const Adjudications& adj) {
  os << "tweet_id,label\n";
  for (const auto& [id, l] : adj) {
    csv::write_row(os, {id, l ? std::string(to_string(*l)) : "undecided"});
  }
}

void write_series(std::ostream& os, const trends::ExternalSeries& s) {
  os << "date,value\n";
  for (const auto& [d, v] : s) {
    nlohmann::json j = v;
    csv::write_row(os, {format_date(d), j.dump()});
  }
}

nlohmann::ordered_json fixture_config() {
  return {
      {"corpus", "corpus.jsonl"},
      {"expert_annotations", "expert.csv"},
      {"adjudications", "adjudications.csv"},
      {"crowd_annotations", "crowd.csv"},
      {"external_series", "infections.csv"},
      {"seed", 7},
      {"strict", true},
      {"threads", 4},
      {"splits", {{"dev", 40}, {"test", 40}, {"count", 3}}},
      {"reliability_granularity", "3class"},
      {"baseline",
       {{"learning_rate", 0.5},
        {"l2", 1e-4},
        {"max_epochs", 30},
        {"batch_size", 16},
        {"patience", 3},
        {"dim", 1 << 14},
        {"mode", "full"}}},
      {"pool", {{"candidates", 15}, {"modes", {"full", "text"}}}},
      {"autolabel", {{"k", 7}, {"n", 9}, {"cap", 35}}},
      {"ensemble", {{"size", 15}}},
      {"augment",
       {{"oversample", true}, {"backtranslate", true}, {"translator", "mock"}}},
      {"trends", {{"zero_fill", false}, {"smooth", 0}, {"metric", "A"}}},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Write the synthetic fixture"};
  std::string out = "data/fixture";
  std::uint64_t seed = 2020;
  app.add_option("-o,--out-dir", out, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const fs::path dir = out;
  fs::create_directories(dir);
  synthetic::FixtureOptions opts;
  opts.seed = seed;
  const auto f = synthetic::make_fixture(opts);

  io::write_atomic(dir / "corpus.jsonl", [&](std::ostream& os) { write_corpus(os, f.corpus); });
  io::write_atomic(dir / "expert.csv", [&](std::ostream& os) { write_annotations(os, f.expert); });
  io::write_atomic(dir / "crowd.csv", [&](std::ostream& os) { write_annotations(os, f.crowd); });
  io::write_atomic(dir / "adjudications.csv",
                   [&](std::ostream& os) { write_adjudications(os, f.adjudications); });
  io::write_atomic(dir / "infections.csv", [&](std::ostream& os) { write_series(os, f.infections); });
  io::write_atomic(dir / "config.json", fixture_config().dump(2) + "\n");

  // Confusion matrix of the best published configuration.
  io::write_atomic(dir / "published_confusion.csv",
                   "gold,S,A,O\nS,63,3,2\nA,5,37,4\nO,5,6,45\n");

  // One tweet, three crowd annotations: S, S, A.
  io::write_atomic(dir / "crowd_ssa.csv",
                   "tweet_id,annotator_id,label,stage\nx1,c1,0,\nx1,c2,0,\nx1,c3,1,\n");

  // Every vote vector of a 9-model pool.
  io::write_atomic(dir / "votes.csv", [](std::ostream& os) {
    os << "tweet_id,S,A,O\n";
    int n = 0;
    for (int s = 0; s <= 9; ++s) {
      for (int a = 0; s + a <= 9; ++a) {
        char id[16];
        std::snprintf(id, sizeof id, "v%02d", n++);
        csv::write_row(os, {id, std::to_string(s), std::to_string(a), std::to_string(9 - s - a)});
      }
    }
  });

  std::cout << "wrote " << f.corpus.size() << " tweets to " << dir.string() << '\n';
  return 0;
}
