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


#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "solidarity/augment.hpp"
#include "solidarity/error.hpp"
#include "solidarity/http_url.hpp"

namespace solidarity {

HttpTranslator::HttpTranslator(HttpTranslatorConfig config)
    : config_(std::move(config)) {
  const auto url = split_http_url(config_.url);
  scheme_host_port_ = url.origin;
  path_ = url.path;
  if (const char* key = std::getenv(config_.api_key_env.c_str())) {
    api_key_ = key;
  }
}

void HttpTranslator::wait_for_slot() const {
  if (config_.max_requests_per_second <= 0.0) return;
  const auto spacing = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / config_.max_requests_per_second));
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(rate_mutex_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_slot_);
    next_slot_ = slot + spacing;
  }
  std::this_thread::sleep_until(slot);
}

std::string HttpTranslator::translate(std::string_view text, Lang source,
                                      Lang target) const {
  const nlohmann::json body = {{"q", std::string(text)},
                               {"source", std::string(to_string(source))},
                               {"target", std::string(to_string(target))}};
  httplib::Headers headers;
  if (!api_key_.empty()) {
    headers.emplace("Authorization", "Bearer " + api_key_);
  }

  auto backoff = config_.initial_backoff;
  std::string last_error = "no attempt made";
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    wait_for_slot();
    httplib::Client client(scheme_host_port_);
    const auto secs = config_.timeout.count() / 1000;
    const auto usecs = (config_.timeout.count() % 1000) * 1000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw EndpointError("translator returned HTTP " +
                          std::to_string(res->status));
    }
    try {
      const auto reply = nlohmann::json::parse(res->body);
      return reply.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw EndpointError(std::string("malformed translator response: ") +
                          e.what());
    }
  }
  throw EndpointError("translator failed after " +
                      std::to_string(config_.max_attempts) +
                      " attempts: " + last_error);
}

}  // namespace solidarity
