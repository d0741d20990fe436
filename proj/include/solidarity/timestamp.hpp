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
#include <optional>
#include <string>
#include <string_view>

namespace solidarity {

using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

// Parses ISO-8601 date-times such as "2020-03-03T12:00:00Z",
// "2020-03-03T13:00:00+01:00", "2020-03-03 12:00:00.250" (fraction
// truncated) or a bare date "2020-03-03". A missing zone designator means
// UTC. Returns nullopt on malformed input.
std::optional<Timestamp> parse_timestamp(std::string_view s);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_timestamp(Timestamp t);

// Strict "YYYY-MM-DD".
std::optional<Date> parse_date(std::string_view s);
std::string format_date(Date d);

inline Date utc_date(Timestamp t) {
  return std::chrono::floor<std::chrono::days>(t);
}

struct IsoWeek {
  int year = 0;
  unsigned week = 0;  // 1..53
  auto operator<=>(const IsoWeek&) const = default;
};

IsoWeek iso_week(Date d);
// Monday of the ISO week containing d.
Date iso_week_start(Date d);

}  // namespace solidarity
