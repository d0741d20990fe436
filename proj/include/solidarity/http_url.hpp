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

#include <string>
#include <string_view>

#include "solidarity/error.hpp"

namespace solidarity {

struct HttpUrl {
  std::string origin;  // "http://host:port"
  std::string path;    // "/..." (at least "/")
};

// Splits "http://host[:port][/path]". Throws UsageError for anything else.
inline HttpUrl split_http_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw UsageError("URL without scheme: '" + std::string(url) + "'");
  }
  const auto scheme = url.substr(0, scheme_end);
  // TLS is not compiled into the HTTP client.
  if (scheme != "http") {
    throw UsageError("unsupported URL scheme '" + std::string(scheme) + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  HttpUrl out;
  if (path_start == std::string_view::npos) {
    out.origin = std::string(url);
    out.path = "/";
  } else {
    out.origin = std::string(url.substr(0, path_start));
    out.path = std::string(url.substr(path_start));
  }
  if (out.origin.size() == scheme_end + 3) {
    throw UsageError("URL without host: '" + std::string(url) + "'");
  }
  return out;
}

}  // namespace solidarity
