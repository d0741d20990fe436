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


#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"

#include "solidarity/error.hpp"
#include "solidarity/metrics.hpp"
#include "solidarity/rng.hpp"

using namespace solidarity;
using namespace solidarity::metrics;

namespace {

// Independent evaluation of the kappa formula from an explicit contingency
// table; shares nothing with the implementation.
double kappa_oracle(const std::vector<int>& a, const std::vector<int>& b,
                    int n_labels) {
  std::vector<std::vector<double>> table(n_labels,
                                         std::vector<double>(n_labels, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) table[a[i]][b[i]] += 1.0;
  const double n = static_cast<double>(a.size());
  double po = 0.0, pe = 0.0;
  for (int c = 0; c < n_labels; ++c) {
    po += table[c][c] / n;
    double row = 0.0, col = 0.0;
    for (int k = 0; k < n_labels; ++k) {
      row += table[c][k];
      col += table[k][c];
    }
    pe += (row / n) * (col / n);
  }
  if (pe == 1.0) return 1.0;
  return (po - pe) / (1.0 - pe);
}

std::vector<int> random_labels(Rng& rng, std::size_t n, int k) {
  std::vector<int> v(n);
  for (auto& x : v) x = static_cast<int>(rng.uniform_below(k));
  return v;
}

const ConfusionMatrix kPublished(3, {63, 3, 2, 5, 37, 4, 5, 6, 45});

}  // namespace

TEST_CASE("cohen_kappa documented cases") {
  const std::vector<int> same = {0, 1, 2, 2, 1, 0, 0};
  CHECK(cohen_kappa(same, same).kappa == doctest::Approx(1.0));

  // S=0, A=1, O=2
  const std::vector<int> a = {0, 0, 1, 2};
  const std::vector<int> b = {0, 1, 1, 2};
  const auto r = cohen_kappa(a, b);
  CHECK(r.observed_agreement == doctest::Approx(0.75));
  CHECK(r.expected_agreement == doctest::Approx(0.3125));
  CHECK(r.kappa == doctest::Approx(7.0 / 11.0).epsilon(1e-12));
  CHECK(r.kappa == doctest::Approx(kappa_oracle(a, b, 3)));
  CHECK(r.n_items == 4);

  const std::vector<int> x = {0, 1};
  const std::vector<int> y = {1, 0};
  CHECK(cohen_kappa(x, y).kappa == doctest::Approx(-1.0));

  const std::vector<int> constant = {2, 2, 2};
  CHECK(cohen_kappa(constant, constant).kappa == 1.0);
}

TEST_CASE("cohen_kappa errors") {
  const std::vector<int> a = {0, 1};
  const std::vector<int> b = {0};
  const std::vector<int> empty;
  CHECK_THROWS_AS(cohen_kappa(a, b), UsageError);
  CHECK_THROWS_AS(cohen_kappa(empty, empty), UsageError);
}

TEST_CASE("cohen_kappa matches the contingency-table oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = 1 + rng.uniform_below(30);
    const int k = 2 + static_cast<int>(rng.uniform_below(3));
    const auto a = random_labels(rng, n, k);
    const auto b = random_labels(rng, n, k);
    CHECK(cohen_kappa(a, b).kappa ==
          doctest::Approx(kappa_oracle(a, b, k)).epsilon(1e-12));
  }
}

TEST_CASE("cohen_kappa symmetry and relabeling invariance") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_labels(rng, 25, 3);
    const auto b = random_labels(rng, 25, 3);
    const double k = cohen_kappa(a, b).kappa;
    CHECK(cohen_kappa(b, a).kappa == doctest::Approx(k).epsilon(1e-12));
    std::vector<int> perm = {0, 1, 2};
    rng.shuffle(std::span<int>(perm));
    std::vector<int> pa, pb;
    for (int v : a) pa.push_back(perm[v] + 10);
    for (int v : b) pb.push_back(perm[v] + 10);
    CHECK(cohen_kappa(pa, pb).kappa == doctest::Approx(k).epsilon(1e-12));
  }
}

TEST_CASE("cohen_kappa near zero for independent labels") {
  Rng rng(99);
  const auto a = random_labels(rng, 10000, 3);
  const auto b = random_labels(rng, 10000, 3);
  CHECK(std::abs(cohen_kappa(a, b).kappa) < 0.05);
}

TEST_CASE("mean_pairwise_kappa") {
  using O = std::optional<int>;
  const std::vector<O> row = {0, 1, 2, 1};
  CHECK(mean_pairwise_kappa({row, row, row}).mean_kappa == doctest::Approx(1.0));

  // (a,b) agree fully; c has kappa 0 against both (enumerated by hand:
  // a=[0,0,1,1], c=[0,1,0,1] gives p_o = 0.5, p_e = 0.5).
  const std::vector<O> a = {0, 0, 1, 1};
  const std::vector<O> c = {0, 1, 0, 1};
  const auto r = mean_pairwise_kappa({a, a, c});
  CHECK(r.pairs_used == 3);
  CHECK(r.mean_kappa == doctest::Approx(1.0 / 3.0));
  CHECK(r.method == "mean_pairwise_cohen");

  // Missing entries: kappa on overlaps only, disjoint pairs reported.
  const std::vector<O> p = {0, 1, std::nullopt, std::nullopt};
  const std::vector<O> q = {0, 1, 0, 1};
  const std::vector<O> s = {std::nullopt, std::nullopt, 1, 0};
  const auto m = mean_pairwise_kappa({p, q, s});
  CHECK(m.pairs_used == 2);
  REQUIRE(m.skipped_pairs.size() == 1);
  CHECK(m.skipped_pairs[0] == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(m.mean_kappa == doctest::Approx((1.0 + -1.0) / 2.0));

  CHECK_THROWS_AS(mean_pairwise_kappa({p}), UsageError);
  CHECK_THROWS_AS(mean_pairwise_kappa({p, s}), UsageError);
}

TEST_CASE("fleiss_kappa") {
  using O = std::optional<int>;
  const std::vector<O> row = {0, 1, 2, 1};
  CHECK(fleiss_kappa({row, row, row}) == doctest::Approx(1.0));
  // Classic textbook check: two raters, fleiss equals Scott's pi.
  // a=[0,0,1,1], b=[0,1,0,1]: p_bar = 0.5, p_e = 0.5 -> 0.
  const std::vector<O> a = {0, 0, 1, 1};
  const std::vector<O> b = {0, 1, 0, 1};
  CHECK(fleiss_kappa({a, b}) == doctest::Approx(0.0));
  const std::vector<O> lone = {0, std::nullopt};
  const std::vector<O> none = {std::nullopt, 1};
  CHECK_THROWS_AS(fleiss_kappa({lone, none}), UsageError);
}

TEST_CASE("confusion matrix") {
  const std::vector<int> gold = {0, 1, 2, 0};
  CHECK(confusion(gold, gold, 3) == ConfusionMatrix(3, {2, 0, 0, 0, 1, 0, 0, 0, 1}));

  const std::vector<int> g1 = {0};
  const std::vector<int> p1 = {1};
  const auto m = confusion(g1, p1, 3);
  CHECK(m.at(0, 1) == 1);
  CHECK(m.total() == 1);

  // The published matrix rebuilt from 170 item-level pairs.
  std::vector<int> g, p;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t k = 0; k < kPublished.at(r, c); ++k) {
        g.push_back(static_cast<int>(r));
        p.push_back(static_cast<int>(c));
      }
    }
  }
  CHECK(g.size() == 170);
  CHECK(confusion(g, p, 3) == kPublished);
  CHECK(kPublished.row_sum(0) == 68);
  CHECK(kPublished.row_sum(1) == 46);
  CHECK(kPublished.row_sum(2) == 56);

  std::unordered_map<std::string, int> golds = {{"t1", 0}, {"t2", 2}};
  CHECK(confusion({{"t1", 0}, {"t2", 1}}, golds, 3).at(2, 1) == 1);
  CHECK_THROWS_AS(confusion({{"t3", 0}}, golds, 3), DataError);
  CHECK_THROWS_AS(confusion(g1, std::vector<int>{}, 3), UsageError);
}

TEST_CASE("macro_f1") {
  const auto diag = macro_f1(ConfusionMatrix(3, {5, 0, 0, 0, 3, 0, 0, 0, 9}));
  CHECK(diag.macro_f1 == doctest::Approx(1.0));
  CHECK(diag.accuracy == doctest::Approx(1.0));

  // Hand-computed: F1 = 42/47, 37/46, 90/107; mean = 587377/694002.
  const auto t4 = macro_f1(kPublished);
  CHECK(t4.per_class[0].f1 == doctest::Approx(42.0 / 47.0).epsilon(1e-12));
  CHECK(t4.per_class[1].f1 == doctest::Approx(37.0 / 46.0).epsilon(1e-12));
  CHECK(t4.per_class[2].f1 == doctest::Approx(90.0 / 107.0).epsilon(1e-12));
  CHECK(t4.macro_f1 == doctest::Approx(587377.0 / 694002.0).epsilon(1e-12));
  CHECK(std::abs(t4.macro_f1 - 0.8464) < 0.002);
  CHECK(t4.accuracy == doctest::Approx(145.0 / 170.0));
  CHECK(t4.n == 170);
  CHECK(t4.warnings.empty());

  const auto degenerate = macro_f1(ConfusionMatrix(3, {4, 1, 0, 2, 3, 0, 0, 0, 0}));
  CHECK(degenerate.per_class[2].f1 == 0.0);
  CHECK(degenerate.warnings.size() == 1);

  CHECK_THROWS_AS(macro_f1(ConfusionMatrix(3)), UsageError);
}

TEST_CASE("macro_f1 invariant under simultaneous row/column permutation") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> cells(9);
    for (auto& c : cells) c = 1 + rng.uniform_below(20);
    const ConfusionMatrix m(3, cells);
    std::vector<std::size_t> perm = {0, 1, 2};
    rng.shuffle(std::span<std::size_t>(perm));
    ConfusionMatrix pm(3);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) pm.add(perm[r], perm[c], m.at(r, c));
    }
    CHECK(macro_f1(pm).macro_f1 == doctest::Approx(macro_f1(m).macro_f1));
    const auto rep = macro_f1(m);
    for (const auto& s : rep.per_class) {
      CHECK(s.f1 >= 0.0);
      CHECK(s.f1 <= 1.0);
    }
  }
}
