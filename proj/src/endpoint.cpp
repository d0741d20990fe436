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


#include "solidarity/endpoint.hpp"

#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

#include "httplib.h"
#include "json.hpp"

#include "solidarity/error.hpp"
#include "solidarity/http_url.hpp"

namespace solidarity {

using nlohmann::json;

std::string encode_request(std::string_view id, std::string_view text) {
  const json j = {{"id", std::string(id)}, {"text", std::string(text)}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

Distribution decode_response(std::string_view line,
                             std::string_view expected_id) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw EndpointError(std::string("malformed endpoint response: ") + e.what());
  }
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
      !j.contains("scores") || !j["scores"].is_object()) {
    throw EndpointError("endpoint response lacks \"id\" or \"scores\"");
  }
  if (j["id"].get<std::string>() != expected_id) {
    throw EndpointError("endpoint response out of order: expected id '" +
                        std::string(expected_id) + "', got '" +
                        j["id"].get<std::string>() + "'");
  }
  Distribution p{};
  const auto& scores = j["scores"];
  for (auto c : kCoarseLabels) {
    const std::string key(to_string(c));
    if (!scores.contains(key) || !scores[key].is_number()) {
      throw EndpointError("endpoint scores lack numeric \"" + key + "\"");
    }
    const double v = scores[key].get<double>();
    if (!std::isfinite(v) || v < 0.0) {
      throw EndpointError("endpoint score \"" + key + "\" is invalid");
    }
    p[index(c)] = v;
  }
  const double sum = p[0] + p[1] + p[2];
  if (std::abs(sum - 1.0) >= 1e-3) {
    throw EndpointError("endpoint scores sum to " + std::to_string(sum));
  }
  for (auto& v : p) v /= sum;
  return p;
}

SubprocessClassifier::SubprocessClassifier(ExternalEndpoint endpoint)
    : endpoint_(std::move(endpoint)) {
  if (endpoint_.command.empty()) {
    throw UsageError("subprocess endpoint needs a command");
  }
}

SubprocessClassifier::~SubprocessClassifier() {
  std::lock_guard lock(mutex_);
  stop();
}

void SubprocessClassifier::start() const {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe2(in_pipe, O_CLOEXEC) != 0) {
    throw EndpointError(std::string("pipe: ") + std::strerror(errno));
  }
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw EndpointError(std::string("pipe: ") + std::strerror(errno));
  }
  std::vector<char*> argv;
  for (const auto& a : endpoint_.command) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw EndpointError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    execvp(argv[0], argv.data());
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  // A dead child must surface as EPIPE, not kill this process.
  std::signal(SIGPIPE, SIG_IGN);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
}

void SubprocessClassifier::stop() const {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    // Closing stdin asks the child to exit; give it a moment, then kill.
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (waitpid(pid_, &status, WNOHANG) == pid_) {
        pid_ = -1;
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    if (pid_ > 0) {
      kill(pid_, SIGKILL);
      waitpid(pid_, &status, 0);
      pid_ = -1;
    }
  }
  buffer_.clear();
}

std::string SubprocessClassifier::read_line() const {
  const auto deadline = std::chrono::steady_clock::now() + endpoint_.timeout;
  while (true) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) throw EndpointError("endpoint timed out");
    pollfd pfd{from_child_, POLLIN, 0};
    const int rc = poll(&pfd, 1, static_cast<int>(left.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw EndpointError(std::string("poll: ") + std::strerror(errno));
    }
    if (rc == 0) throw EndpointError("endpoint timed out");
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw EndpointError(std::string("read: ") + std::strerror(errno));
    }
    if (n == 0) throw EndpointError("endpoint closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

Distribution SubprocessClassifier::predict(const Tweet& tweet) const {
  std::lock_guard lock(mutex_);
  if (pid_ < 0) start();
  try {
    const std::string req = encode_request(tweet.id, tweet.text) + "\n";
    std::size_t sent = 0;
    while (sent < req.size()) {
      const ssize_t n = write(to_child_, req.data() + sent, req.size() - sent);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw EndpointError(std::string("write to endpoint: ") +
                            std::strerror(errno));
      }
      sent += static_cast<std::size_t>(n);
    }
    return decode_response(read_line(), tweet.id);
  } catch (const EndpointError&) {
    stop();
    throw;
  }
}

std::string SubprocessClassifier::describe() const {
  std::string s = "subprocess(";
  for (std::size_t i = 0; i < endpoint_.command.size(); ++i) {
    if (i) s += ' ';
    s += endpoint_.command[i];
  }
  return s + ")";
}

HttpClassifier::HttpClassifier(ExternalEndpoint endpoint)
    : endpoint_(std::move(endpoint)) {
  const auto url = split_http_url(endpoint_.url);
  origin_ = url.origin;
  path_ = url.path;
  if (path_.back() != '/') path_ += '/';
  path_ += "predict";
}

Distribution HttpClassifier::predict(const Tweet& tweet) const {
  std::lock_guard lock(mutex_);
  httplib::Client client(origin_);
  const auto ms = endpoint_.timeout.count();
  client.set_connection_timeout(ms / 1000, (ms % 1000) * 1000);
  client.set_read_timeout(ms / 1000, (ms % 1000) * 1000);
  client.set_write_timeout(ms / 1000, (ms % 1000) * 1000);
  auto res = client.Post(path_, encode_request(tweet.id, tweet.text),
                         "application/json");
  if (!res) {
    throw EndpointError("endpoint transport error: " +
                        httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw EndpointError("endpoint returned HTTP " + std::to_string(res->status));
  }
  std::string body = res->body;
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) {
    body.pop_back();
  }
  return decode_response(body, tweet.id);
}

std::string HttpClassifier::describe() const {
  return "http(" + endpoint_.url + ")";
}

std::shared_ptr<const Classifier> make_external_classifier(
    ExternalEndpoint endpoint) {
  if (endpoint.transport == Transport::Subprocess) {
    return std::make_shared<SubprocessClassifier>(std::move(endpoint));
  }
  return std::make_shared<HttpClassifier>(std::move(endpoint));
}

}  // namespace solidarity
