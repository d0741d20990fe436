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


#include <cmath>
#include <sstream>

#include "doctest.h"

#include "solidarity/error.hpp"
#include "solidarity/rng.hpp"
#include "solidarity/trends.hpp"

using namespace solidarity;
using namespace solidarity::trends;
using namespace std::chrono;

namespace {

Timestamp ts(const char* s) { return *parse_timestamp(s); }
Date on(const char* s) { return *parse_date(s); }

// Oracle: explicit rank table built by counting, then textbook Pearson.
double brute_spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (double w : v) {
        less += w < v[i];
        equal += w == v[i];
      }
      r[i] = less + (equal + 1.0) / 2.0;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i] / n;
    my += ry[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("daily_counts") {
  CHECK(daily_counts(std::span<const DatedLabel>{}).empty());

  const std::vector<DatedLabel> same = {{ts("2020-03-02T08:00:00Z"), LabelCoarse::S},
                                        {ts("2020-03-02T12:00:00Z"), LabelCoarse::S},
                                        {ts("2020-03-02T20:00:00Z"), LabelCoarse::A}};
  const auto s = daily_counts(same);
  REQUIRE(s.size() == 1);
  CHECK(s.at(on("2020-03-02")) == DayCounts{2, 1, 0});

  const std::vector<DatedLabel> edge = {{ts("2020-03-02T23:59:00Z"), LabelCoarse::O},
                                        {ts("2020-03-03T00:01:00Z"), LabelCoarse::O}};
  CHECK(daily_counts(edge).size() == 2);
  // Offsets are normalized to UTC before bucketing.
  const std::vector<DatedLabel> offset = {{ts("2020-03-03T00:30:00+01:00"), LabelCoarse::S}};
  CHECK(daily_counts(offset).begin()->first == on("2020-03-02"));

  // Conservation on random data.
  Rng rng(2);
  std::vector<DatedLabel> items;
  std::array<std::size_t, 3> totals{};
  for (int i = 0; i < 5000; ++i) {
    const auto l = static_cast<LabelCoarse>(rng.uniform_below(3));
    ++totals[index(l)];
    items.push_back({ts("2020-03-01T00:00:00Z") + seconds{rng.uniform_below(86400 * 90)}, l});
  }
  std::array<std::size_t, 3> summed{};
  for (const auto& [d, c] : daily_counts(items)) {
    for (std::size_t k = 0; k < 3; ++k) summed[k] += c[k];
  }
  CHECK(summed == totals);
}

TEST_CASE("zero_fill") {
  DailySeries s;
  s[on("2020-03-01")] = {1, 0, 0};
  s[on("2020-03-04")] = {0, 1, 0};
  const auto z = zero_fill(s);
  CHECK(z.size() == 4);
  CHECK(z.at(on("2020-03-02")) == DayCounts{0, 0, 0});
  CHECK(zero_fill(DailySeries{}).empty());
}

TEST_CASE("sa_ratio") {
  DailySeries s;
  s[on("2020-03-01")] = {3, 3, 1};
  s[on("2020-03-02")] = {2189, 2569, 0};
  s[on("2020-03-03")] = {5, 0, 2};
  const auto r = sa_ratio(s);
  CHECK(*r.at(on("2020-03-01")) == 1.0);
  CHECK(std::abs(*r.at(on("2020-03-02")) - 0.8521) < 1e-4);
  CHECK(*r.at(on("2020-03-02")) == doctest::Approx(2189.0 / 2569.0));
  CHECK_FALSE(r.at(on("2020-03-03")).has_value());
  CHECK(ratio_values(r).size() == 2);

  Rng rng(6);
  DailySeries rs;
  Date d = on("2020-01-01");
  for (int i = 0; i < 300; ++i, d += days{1}) {
    rs[d] = {rng.uniform_below(10), rng.uniform_below(10), 0};
  }
  for (const auto& [date, v] : sa_ratio(rs)) {
    const auto& c = rs.at(date);
    if (!v) {
      CHECK(c[1] == 0);
      continue;
    }
    CHECK((*v > 1.0) == (c[0] > c[1]));
  }
}

TEST_CASE("weekly_average") {
  const std::array<LabelCoarse, 3> all = {LabelCoarse::S, LabelCoarse::A, LabelCoarse::O};
  // 2020-03-02 is a Monday.
  DailySeries s;
  Date d = on("2020-03-02");
  for (int i = 0; i < 7; ++i, d += days{1}) s[d] = {4, 3, 3};
  auto w = weekly_average(s, all);
  REQUIRE(w.weeks.size() == 1);
  CHECK(w.weeks[0].sum == 70.0);
  CHECK_FALSE(w.weeks[0].partial);
  CHECK(w.weeks[0].week == IsoWeek{2020, 10});

  DailySeries two;
  two[on("2020-03-02")] = {100, 0, 0};
  two[on("2020-03-09")] = {0, 150, 0};
  two[on("2020-03-15")] = {0, 50, 0};
  w = weekly_average(two, all);
  REQUIRE(w.weeks.size() == 2);
  CHECK(w.weeks[0].sum == 100.0);
  CHECK(w.weeks[1].sum == 200.0);
  CHECK(w.mean == 150.0);

  const std::array<LabelCoarse, 1> only_a = {LabelCoarse::A};
  CHECK(weekly_average(two, only_a).mean == 100.0);

  DailySeries partial;
  partial[on("2020-03-04")] = {1, 1, 1};
  partial[on("2020-03-05")] = {1, 1, 1};
  w = weekly_average(partial, all);
  REQUIRE(w.weeks.size() == 1);
  CHECK(w.weeks[0].partial);
  CHECK(w.weeks[0].sum == 6.0);

  // Year boundary: 2020-12-31 belongs to ISO week 53 of 2020.
  DailySeries boundary;
  boundary[on("2020-12-31")] = {1, 0, 0};
  boundary[on("2021-01-04")] = {1, 0, 0};
  w = weekly_average(boundary, all);
  CHECK(w.weeks[0].week == IsoWeek{2020, 53});
  CHECK(w.weeks[1].week == IsoWeek{2021, 1});

  CHECK_THROWS_AS(weekly_average(DailySeries{}, all), UsageError);
}

TEST_CASE("moving_average") {
  ExternalSeries s;
  Date d = on("2020-03-01");
  for (int i = 0; i < 10; ++i, d += days{1}) s[d] = i;
  const auto m = moving_average(s, 3);
  CHECK(m.at(on("2020-03-01")) == 0.5);
  CHECK(m.at(on("2020-03-05")) == 4.0);
  CHECK(moving_average(s, 1) == s);
  CHECK_THROWS_AS(moving_average(s, 4), UsageError);
}

TEST_CASE("spearman basics") {
  const std::vector<double> up = {1, 2, 3, 4, 5};
  const std::vector<double> up2 = {10, 20, 25, 100, 101};
  const std::vector<double> down = {5, 4, 3, 2, 1};
  CHECK(spearman(up, up2).rho == doctest::Approx(1.0));
  CHECK(spearman(up, down).rho == doctest::Approx(-1.0));
  CHECK(spearman(up, up2).n == 5);

  const std::vector<double> x = {1, 2, 2, 3};
  const std::vector<double> y = {1, 3, 2, 4};
  CHECK(average_ranks(x) == std::vector<double>{1, 2.5, 2.5, 4});
  CHECK(std::abs(spearman(x, y).rho - brute_spearman(x, y)) < 1e-12);
  // Hand calculation: ranks x (1, 2.5, 2.5, 4), y (1, 3, 2, 4);
  // sxy = 4.5, sxx = 4.5, syy = 5 -> rho = 4.5 / sqrt(22.5).
  CHECK(spearman(x, y).rho == doctest::Approx(4.5 / std::sqrt(22.5)));

  const std::vector<double> one = {1};
  CHECK_THROWS_AS(spearman(one, one), DataError);
  const std::vector<double> flat = {2, 2, 2};
  const std::vector<double> three = {1, 2, 3};
  CHECK_THROWS_AS(spearman(flat, three), DataError);
  CHECK_THROWS_AS(spearman(three, up), UsageError);
}

TEST_CASE("spearman matches the brute-force oracle") {
  Rng rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = 2 + rng.uniform_below(49);
    std::vector<double> x(n), y(n);
    // Small value ranges force plenty of ties.
    const auto range = 2 + rng.uniform_below(10);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng.uniform_below(range));
      y[i] = static_cast<double>(rng.uniform_below(range));
    }
    const double bx = brute_spearman(x, y);
    if (!std::isfinite(bx)) {
      CHECK_THROWS_AS(spearman(x, y), DataError);
      continue;
    }
    const auto r = spearman(x, y);
    CHECK(std::abs(r.rho - bx) < 1e-12);
    CHECK(std::abs(r.rho) <= 1.0);
    CHECK(std::abs(spearman(y, x).rho - r.rho) < 1e-12);
    // Invariant under strictly monotone transforms.
    std::vector<double> tx(n);
    for (std::size_t i = 0; i < n; ++i) tx[i] = std::exp(x[i]) * 3.0 - 7.0;
    CHECK(std::abs(spearman(tx, y).rho - r.rho) < 1e-12);
  }
}

TEST_CASE("spearman on dated series") {
  ExternalSeries a, b;
  Date d = on("2020-03-01");
  for (int i = 0; i < 20; ++i, d += days{1}) {
    a[d] = i;
    if (i % 2 == 0) b[d] = i * i;
  }
  b[on("2021-01-01")] = 5;  // no overlap, ignored
  const auto r = spearman(a, b);
  CHECK(r.n == 10);
  CHECK(r.rho == doctest::Approx(1.0));
  const auto windowed = spearman(a, b, on("2020-03-05"), on("2020-03-10"));
  CHECK(windowed.n == 3);
  CHECK_THROWS_AS(spearman(a, b, on("2020-03-05"), on("2020-03-05")), DataError);
}

TEST_CASE("series CSV") {
  std::istringstream in("date,value\n2020-03-01,10\n2020-03-02,12.5\n");
  const auto s = read_series(in, "inf.csv");
  CHECK(s.size() == 2);
  CHECK(s.at(on("2020-03-02")) == 12.5);

  std::istringstream unordered("date,value\n2020-03-02,1\n2020-03-01,2\n");
  try {
    read_series(unordered, "inf.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream bad("date,value\n2020-13-01,1\n");
  CHECK_THROWS_AS(read_series(bad, "inf.csv"), ParseError);
  std::istringstream nan("date,value\n2020-03-01,abc\n");
  CHECK_THROWS_AS(read_series(nan, "inf.csv"), ParseError);

  DailySeries ds;
  ds[on("2020-03-01")] = {2, 1, 0};
  ds[on("2020-03-02")] = {1, 0, 4};
  std::ostringstream daily;
  write_daily_csv(daily, ds);
  CHECK(daily.str() ==
        "date,S,A,O,sa_ratio\n2020-03-01,2,1,0,2\n2020-03-02,1,0,4,\n");
  std::ostringstream lng;
  write_long_csv(lng, ds);
  CHECK(lng.str() ==
        "date,metric,value\n"
        "2020-03-01,count_S,2\n2020-03-01,count_A,1\n2020-03-01,count_O,0\n"
        "2020-03-01,sa_ratio,2\n"
        "2020-03-02,count_S,1\n2020-03-02,count_A,0\n2020-03-02,count_O,4\n");
}
