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
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

#include "solidarity/classifier.hpp"

namespace solidarity {

// Wire protocol shared by both transports (one JSON object per line):
//   request  {"id": string, "text": string}
//   response {"id": string, "scores": {"S": number, "A": number, "O": number}}
// Scores must be finite and non-negative. A sum within 1e-3 of 1 is
// renormalized; anything further off is rejected.
std::string encode_request(std::string_view id, std::string_view text);
// Throws EndpointError on malformed JSON, id mismatch or invalid scores.
Distribution decode_response(std::string_view line, std::string_view expected_id);

enum class Transport { Subprocess, Http };

struct ExternalEndpoint {
  Transport transport = Transport::Subprocess;
  // Subprocess: argv (argv[0] resolved through PATH).
  std::vector<std::string> command;
  // Http: base URL; requests go to <url>/predict.
  std::string url;
  std::chrono::milliseconds timeout{5000};
};

// Talks to a child process over its stdin/stdout. One request is in flight
// at a time per instance. After a timeout or protocol error the child is
// killed and the next call starts a fresh one.
class SubprocessClassifier final : public Classifier {
 public:
  explicit SubprocessClassifier(ExternalEndpoint endpoint);
  ~SubprocessClassifier() override;
  SubprocessClassifier(const SubprocessClassifier&) = delete;
  SubprocessClassifier& operator=(const SubprocessClassifier&) = delete;

  Distribution predict(const Tweet& tweet) const override;
  std::string describe() const override;

 private:
  void start() const;
  void stop() const;
  std::string read_line() const;

  ExternalEndpoint endpoint_;
  mutable std::mutex mutex_;
  mutable pid_t pid_ = -1;
  mutable int to_child_ = -1;
  mutable int from_child_ = -1;
  mutable std::string buffer_;
};

// POSTs one request per call to <url>/predict.
class HttpClassifier final : public Classifier {
 public:
  explicit HttpClassifier(ExternalEndpoint endpoint);
  Distribution predict(const Tweet& tweet) const override;
  std::string describe() const override;

 private:
  ExternalEndpoint endpoint_;
  std::string origin_;
  std::string path_;
  mutable std::mutex mutex_;
};

std::shared_ptr<const Classifier> make_external_classifier(
    ExternalEndpoint endpoint);

}  // namespace solidarity
