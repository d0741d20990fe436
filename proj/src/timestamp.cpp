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


#include "solidarity/timestamp.hpp"

#include <cstdio>

namespace solidarity {

namespace {

using namespace std::chrono;

bool read_digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

std::optional<Date> date_prefix(std::string_view s) {
  int y = 0, m = 0, d = 0;
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!read_digits(s, 0, 4, y) || !read_digits(s, 5, 2, m) ||
      !read_digits(s, 8, 2, d)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view s) {
  const auto date = date_prefix(s);
  if (!date) return std::nullopt;
  if (s.size() == 10) return Timestamp{*date};
  if (s[10] != 'T' && s[10] != ' ') return std::nullopt;

  int hh = 0, mm = 0, ss = 0;
  if (!read_digits(s, 11, 2, hh) || s.size() < 14 || s[13] != ':' ||
      !read_digits(s, 14, 2, mm)) {
    return std::nullopt;
  }
  std::size_t pos = 16;
  if (pos < s.size() && s[pos] == ':') {
    if (!read_digits(s, pos + 1, 2, ss)) return std::nullopt;
    pos += 3;
    if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
      ++pos;
      const std::size_t start = pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      if (pos == start) return std::nullopt;
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;

  seconds offset{0};
  if (pos < s.size()) {
    const char z = s[pos];
    if (z == 'Z' || z == 'z') {
      ++pos;
    } else if (z == '+' || z == '-') {
      int oh = 0, om = 0;
      if (!read_digits(s, pos + 1, 2, oh)) return std::nullopt;
      std::size_t next = pos + 3;
      if (next < s.size() && s[next] == ':') ++next;
      if (next < s.size()) {
        if (!read_digits(s, next, 2, om)) return std::nullopt;
        next += 2;
      }
      if (oh > 23 || om > 59) return std::nullopt;
      offset = hours{oh} + minutes{om};
      if (z == '-') offset = -offset;
      pos = next;
    } else {
      return std::nullopt;
    }
  }
  if (pos != s.size()) return std::nullopt;
  return Timestamp{*date} + hours{hh} + minutes{mm} + seconds{ss} - offset;
}

std::string format_timestamp(Timestamp t) {
  const Date d = utc_date(t);
  const year_month_day ymd{d};
  const hh_mm_ss hms{t - d};
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()),
                static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

std::optional<Date> parse_date(std::string_view s) {
  if (s.size() != 10) return std::nullopt;
  return date_prefix(s);
}

std::string format_date(Date d) {
  const year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

Date iso_week_start(Date d) {
  const weekday wd{d};
  // iso_encoding: Monday = 1 ... Sunday = 7
  return d - days{wd.iso_encoding() - 1};
}

IsoWeek iso_week(Date d) {
  // The ISO year is the year of the Thursday in the same week.
  const Date thursday = iso_week_start(d) + days{3};
  const year_month_day ymd{thursday};
  const Date jan1 = sys_days{ymd.year() / January / 1};
  const auto ordinal = (thursday - jan1).count();
  return IsoWeek{static_cast<int>(ymd.year()),
                 static_cast<unsigned>(ordinal / 7 + 1)};
}

}  // namespace solidarity
