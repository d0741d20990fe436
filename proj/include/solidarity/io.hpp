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

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

namespace solidarity::io {

// Writes through a temporary file in the destination directory and renames
// it into place, so readers never observe a partial artifact.
void write_atomic(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer);
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256(const std::string& bytes);

}  // namespace solidarity::io
