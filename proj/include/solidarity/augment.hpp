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

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "solidarity/dataset.hpp"

namespace solidarity {

// Implementations must be deterministic for a fixed input and safe to call
// from several threads. Failures are reported by throwing EndpointError.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string translate(std::string_view text, Lang source,
                                Lang target) const = 0;
};

class IdentityTranslator final : public Translator {
 public:
  std::string translate(std::string_view text, Lang, Lang) const override {
    return std::string(text);
  }
};

// Reverses the whitespace-separated word order and prefixes "[<target>] ".
// Stand-in for a real service in tests and dry runs.
class MockTranslator final : public Translator {
 public:
  std::string translate(std::string_view text, Lang source,
                        Lang target) const override;
};

struct HttpTranslatorConfig {
  // e.g. "http://localhost:8080/translate"
  std::string url;
  // Name of the environment variable holding the API key; unset or empty
  // variable means no Authorization header.
  std::string api_key_env = "SOLIDARITY_TRANSLATE_API_KEY";
  int max_attempts = 4;
  std::chrono::milliseconds initial_backoff{200};
  std::chrono::milliseconds timeout{10000};
  // Minimum spacing between requests across all threads. 0 disables.
  double max_requests_per_second = 5.0;
};

// POSTs {"q","source","target"} as JSON and expects {"text": ...}. Retries
// with exponential backoff on transport errors, 429 and 5xx.
class HttpTranslator final : public Translator {
 public:
  explicit HttpTranslator(HttpTranslatorConfig config);
  std::string translate(std::string_view text, Lang source,
                        Lang target) const override;

 private:
  void wait_for_slot() const;

  HttpTranslatorConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  std::string api_key_;
  mutable std::mutex rate_mutex_;
  mutable std::chrono::steady_clock::time_point next_slot_{};
};

// Appends uniform-with-replacement duplicates of each minority class until
// every class matches the majority count. Duplicates carry provenance
// Oversample and id "<source id>#os<k>". Throws DataError if a class is empty.
LabeledDataset oversample(const LabeledDataset& d, std::uint64_t seed);

struct BackTranslateOptions {
  Lang pivot = Lang::De;
  bool drop_identical = false;
  unsigned threads = 1;
};

struct BackTranslateResult {
  LabeledDataset dataset;
  std::size_t translated = 0;
  std::size_t failed = 0;
  std::size_t dropped_identical = 0;
  std::vector<std::string> warnings;
};

// For each expert or crowd example, appends a copy whose text went
// source -> pivot -> source (the other language serves as pivot for texts
// already in the pivot language). Copies get provenance Backtranslation and
// id "<source id>#bt". Failed items are skipped and counted. Output order
// is input order followed by copies in source order.
BackTranslateResult back_translate(const LabeledDataset& d,
                                   const Translator& translator,
                                   const BackTranslateOptions& options = {});

// Training-set variants built from human-labeled data plus auto labels.
// Oversampling and back-translation act on the human part only.
struct TrainingSets {
  LabeledDataset human;
  LabeledDataset with_auto;              // human + auto
  LabeledDataset with_oversample;        // human + auto + duplicates
  LabeledDataset with_backtranslation;   // human + auto + translated copies
  LabeledDataset all;                    // human + auto + both
  std::size_t oversample_duplicates = 0;
  std::size_t backtranslation_copies = 0;
  std::vector<std::string> warnings;
};

TrainingSets compose_training_sets(const LabeledDataset& human,
                                   const LabeledDataset& auto_labeled,
                                   const Translator& translator,
                                   std::uint64_t seed,
                                   const BackTranslateOptions& options = {});

}  // namespace solidarity
