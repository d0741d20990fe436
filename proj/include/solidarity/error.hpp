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

#include <stdexcept>
#include <string>

namespace solidarity {

// Bad input data: malformed files, violated preconditions on content.
// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed JSON line, CSV row, etc. Carries the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(std::string source, std::size_t line, const std::string& msg)
      : DataError(source + ":" + std::to_string(line) + ": " + msg),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Misuse of an API (bad arguments, violated non-data preconditions).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Training diverged (non-finite loss) or cannot start.
class TrainingError : public std::runtime_error {
 public:
  explicit TrainingError(const std::string& what) : std::runtime_error(what) {}
};

// External model or translator failed: timeout, transport, bad response.
class EndpointError : public std::runtime_error {
 public:
  explicit EndpointError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace solidarity
