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


#include "solidarity/trends.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "solidarity/csv.hpp"
#include "solidarity/error.hpp"

namespace solidarity::trends {

using std::chrono::days;

DailySeries daily_counts(std::span<const DatedLabel> items) {
  DailySeries s;
  for (const auto& it : items) ++s[utc_date(it.created_at)][index(it.label)];
  return s;
}

DailySeries daily_counts(const LabeledDataset& d) {
  DailySeries s;
  for (const auto& e : d) ++s[utc_date(e.tweet.created_at)][index(e.label)];
  return s;
}

DailySeries zero_fill(const DailySeries& s) {
  if (s.empty()) return s;
  DailySeries out = s;
  for (Date d = s.begin()->first; d <= s.rbegin()->first; d += days{1}) {
    out.try_emplace(d);
  }
  return out;
}

RatioSeries sa_ratio(const DailySeries& s) {
  RatioSeries r;
  for (const auto& [date, c] : s) {
    const auto a = c[index(LabelCoarse::A)];
    if (a == 0) {
      r.emplace(date, std::nullopt);
    } else {
      r.emplace(date, static_cast<double>(c[index(LabelCoarse::S)]) /
                          static_cast<double>(a));
    }
  }
  return r;
}

WeeklyAverage weekly_average(const DailySeries& s,
                             std::span<const LabelCoarse> labels) {
  if (s.empty()) throw UsageError("weekly_average: empty series");
  if (labels.empty()) throw UsageError("weekly_average: no labels selected");
  const Date first = s.begin()->first;
  const Date last = s.rbegin()->first;

  std::map<IsoWeek, WeekValue> weeks;
  for (const auto& [date, c] : s) {
    auto& w = weeks[iso_week(date)];
    w.week = iso_week(date);
    for (auto l : labels) w.sum += static_cast<double>(c[index(l)]);
    const Date monday = iso_week_start(date);
    w.partial = monday < first || monday + days{6} > last;
  }
  WeeklyAverage out;
  double total = 0.0;
  for (auto& [key, w] : weeks) {
    total += w.sum;
    out.weeks.push_back(w);
  }
  out.mean = total / static_cast<double>(out.weeks.size());
  return out;
}

ExternalSeries moving_average(const ExternalSeries& s, unsigned window) {
  if (window == 0 || window % 2 == 0) {
    throw UsageError("moving_average: window must be odd and positive");
  }
  const int half = static_cast<int>(window / 2);
  ExternalSeries out;
  for (const auto& [date, value] : s) {
    double sum = 0.0;
    int n = 0;
    for (int k = -half; k <= half; ++k) {
      const auto it = s.find(date + days{k});
      if (it != s.end()) {
        sum += it->second;
        ++n;
      }
    }
    out.emplace(date, sum / n);
  }
  return out;
}

ExternalSeries label_series(const DailySeries& s, LabelCoarse label) {
  ExternalSeries out;
  for (const auto& [date, c] : s) {
    out.emplace(date, static_cast<double>(c[index(label)]));
  }
  return out;
}

ExternalSeries ratio_values(const RatioSeries& r) {
  ExternalSeries out;
  for (const auto& [date, v] : r) {
    if (v) out.emplace(date, *v);
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j.
    const double r = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

CorrelationResult spearman(std::span<const double> x,
                           std::span<const double> y) {
  if (x.size() != y.size()) throw UsageError("spearman: length mismatch");
  if (x.size() < 2) {
    throw DataError("spearman: need at least 2 overlapping points, got " +
                    std::to_string(x.size()));
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DataError("spearman: a series has zero rank variance");
  }
  CorrelationResult r;
  r.n = x.size();
  r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return r;
}

CorrelationResult spearman(const ExternalSeries& x, const ExternalSeries& y,
                           std::optional<Date> from, std::optional<Date> to) {
  std::vector<double> xs, ys;
  for (const auto& [date, v] : x) {
    if (from && date < *from) continue;
    if (to && date > *to) continue;
    const auto it = y.find(date);
    if (it == y.end()) continue;
    xs.push_back(v);
    ys.push_back(it->second);
  }
  return spearman(xs, ys);
}

ExternalSeries read_series(std::istream& in, const std::string& source) {
  const auto table = csv::read(in, source);
  const auto c_date = table.column("date", source);
  const auto c_value = table.column("value", source);
  ExternalSeries out;
  std::optional<Date> prev;
  for (const auto& [line, row] : table.rows) {
    const auto date = parse_date(row[c_date]);
    if (!date) throw ParseError(source, line, "bad date '" + row[c_date] + "'");
    if (prev && *date <= *prev) {
      throw ParseError(source, line, "dates must be strictly increasing");
    }
    double v = 0.0;
    std::istringstream vs(row[c_value]);
    vs.imbue(std::locale::classic());
    if (!(vs >> v) || !(vs >> std::ws).eof() || !std::isfinite(v)) {
      throw ParseError(source, line, "bad value '" + row[c_value] + "'");
    }
    out.emplace(*date, v);
    prev = date;
  }
  return out;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

void write_daily_csv(std::ostream& out, const DailySeries& s) {
  out << "date,S,A,O,sa_ratio\n";
  const auto ratios = sa_ratio(s);
  for (const auto& [date, c] : s) {
    const auto& r = ratios.at(date);
    csv::write_row(out, {format_date(date), std::to_string(c[0]),
                         std::to_string(c[1]), std::to_string(c[2]),
                         r ? fmt(*r) : std::string()});
  }
}

void write_long_csv(std::ostream& out, const DailySeries& s) {
  out << "date,metric,value\n";
  const auto ratios = sa_ratio(s);
  for (const auto& [date, c] : s) {
    const auto d = format_date(date);
    for (auto l : kCoarseLabels) {
      csv::write_row(out, {d, "count_" + std::string(to_string(l)),
                           std::to_string(c[index(l)])});
    }
    if (const auto& r = ratios.at(date)) {
      csv::write_row(out, {d, "sa_ratio", fmt(*r)});
    }
  }
}

}  // namespace solidarity::trends
