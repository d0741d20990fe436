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

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace solidarity::csv {

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF tolerated.
// Embedded newlines inside quotes are not supported.
std::vector<std::string> split_row(std::string_view line);

struct Table {
  std::vector<std::string> header;
  // Each row carries its 1-based source line number.
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;

  // Column index of `name`, or throws DataError naming `source`.
  std::size_t column(std::string_view name, std::string_view source) const;
};

// Reads a header line plus rows; blank lines are skipped. Every row must have
// as many fields as the header.
Table read(std::istream& in, const std::string& source);

std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace solidarity::csv
