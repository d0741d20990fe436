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

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solidarity/dataset.hpp"
#include "solidarity/labels.hpp"
#include "solidarity/timestamp.hpp"

namespace solidarity::trends {

using DayCounts = std::array<std::size_t, kNumCoarse>;

// Days with no tweets are absent, not zero.
using DailySeries = std::map<Date, DayCounts>;
// S/A per day; nullopt where A = 0.
using RatioSeries = std::map<Date, std::optional<double>>;
using ExternalSeries = std::map<Date, double>;

struct DatedLabel {
  Timestamp created_at;
  LabelCoarse label;
};

DailySeries daily_counts(std::span<const DatedLabel> items);
DailySeries daily_counts(const LabeledDataset& d);

// Inserts zero-count entries for every missing day between the first and
// last date.
DailySeries zero_fill(const DailySeries& s);

RatioSeries sa_ratio(const DailySeries& s);

struct WeekValue {
  IsoWeek week;
  double sum = 0.0;
  // The week is not fully inside [first day, last day] of the series.
  bool partial = false;
};

struct WeeklyAverage {
  std::vector<WeekValue> weeks;
  double mean = 0.0;  // mean of weekly sums
};

// Sums the selected labels per ISO week. Throws UsageError on an empty
// series or an empty label subset.
WeeklyAverage weekly_average(const DailySeries& s,
                             std::span<const LabelCoarse> labels);

// Centered moving average over a window of `window` (odd) calendar days;
// days missing from the input count as absent, not zero.
ExternalSeries moving_average(const ExternalSeries& s, unsigned window = 7);

// Per-day count of one label as a real-valued series.
ExternalSeries label_series(const DailySeries& s, LabelCoarse label);
ExternalSeries ratio_values(const RatioSeries& r);

struct CorrelationResult {
  double rho = 0.0;
  std::size_t n = 0;
  std::string method = "spearman_average_ranks";
};

// 1-based ranks; ties share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks. Throws DataError with fewer than
// two points or zero rank variance in either input.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

// Inner join on dates within [from, to] (inclusive; unset = unbounded),
// then spearman on the joined values.
CorrelationResult spearman(const ExternalSeries& x, const ExternalSeries& y,
                           std::optional<Date> from = std::nullopt,
                           std::optional<Date> to = std::nullopt);

// CSV "date,value" with ISO dates.
ExternalSeries read_series(std::istream& in, const std::string& source);

// CSV date,S,A,O,sa_ratio (empty ratio where undefined).
void write_daily_csv(std::ostream& out, const DailySeries& s);
// Long format date,metric,value for plotting. Undefined ratios are omitted.
void write_long_csv(std::ostream& out, const DailySeries& s);

}  // namespace solidarity::trends
