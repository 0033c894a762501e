// Copyright 2026 The movoid Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "movoid/bounds.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace movoid {
namespace {

const std::vector<std::uint64_t> kOrders = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

bool satisfies(const Rational& a, const Rational& r, const Rational& d, const BigInt& t) {
  const Rational x = d * Rational(t) - a;
  return x >= 0 && x * x >= r;
}

std::string display(const TableRow& row, bool first) { return table_display(first ? row.first : row.second); }

TEST(CeilRadicalTest, Examples) {
  EXPECT_EQ(ceil_radical(-3, 337, 4), 4);
  EXPECT_EQ(ceil_radical(0, 0, 1), 0);
  EXPECT_EQ(ceil_radical(-3, 9, 2), 0);
  EXPECT_EQ(ceil_radical(-3, 25, 2), 1);  // exactly 1
  EXPECT_EQ(ceil_radical(-3, 26, 2), 2);
  EXPECT_EQ(ceil_radical(-100, 4, 1), 0);  // negative value clamps to 0
  EXPECT_EQ(ceil_radical(Rational(1, 3), Rational(1, 9), 1), 1);
  EXPECT_THROW(ceil_radical(0, -1, 1), std::invalid_argument);
  EXPECT_THROW(ceil_radical(0, 1, 0), std::invalid_argument);
}

TEST(CeilRadicalTest, SmallestQualifyingInteger) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const Rational a(static_cast<long long>(rng() % 2001) - 1000, static_cast<long long>(rng() % 9 + 1));
    const Rational r(static_cast<long long>(rng() % 100000), static_cast<long long>(rng() % 9 + 1));
    const Rational d(static_cast<long long>(rng() % 50 + 1), static_cast<long long>(rng() % 5 + 1));
    const BigInt t = ceil_radical(a, r, d);
    ASSERT_GE(t, 0);
    ASSERT_TRUE(satisfies(a, r, d, t));
    if (t > 0) {
      ASSERT_FALSE(satisfies(a, r, d, t - 1));
    }
  }
  // Far beyond double precision.
  const Rational huge(ipow(BigInt(10), 80) + 1);
  EXPECT_EQ(ceil_radical(0, huge, 1), ipow(BigInt(10), 40) + 1);
  EXPECT_EQ(ceil_radical(0, Rational(ipow(BigInt(10), 80)), 1), ipow(BigInt(10), 40));
}

TEST(BoundsTest, Bklp) {
  EXPECT_EQ(bound_bklp(SpaceKind::kElliptic, 3, 3).threshold(), 4);
  EXPECT_EQ(bound_bklp(SpaceKind::kElliptic, 3, 3).radicand, 333);
  EXPECT_EQ(bound_bklp(SpaceKind::kElliptic, 2, 3).radicand, 117);
  EXPECT_EQ(bound_bklp(SpaceKind::kElliptic, 2, 3).threshold(), 2);
  const auto h = bound_bklp(SpaceKind::kHermitian, 2, 4);
  EXPECT_EQ(h.radicand, 9 + 4 * 32);
  EXPECT_EQ(h.d, 6);
  EXPECT_EQ(h.threshold(), 2);
  for (auto q : kOrders) EXPECT_EQ(bound_bklp(SpaceKind::kSymplectic, 2, q).threshold(), 1) << q;
  EXPECT_THROW(bound_bklp(SpaceKind::kSymplectic, 2, 6), std::invalid_argument);
  EXPECT_THROW(bound_bklp(SpaceKind::kHermitian, 2, 8), std::invalid_argument);
}

TEST(BoundsTest, SmallImprovement) {
  for (auto q : kOrders) {
    const auto b = bound_small_improv(SpaceKind::kSymplectic, 2, q);
    // sqrt(9 + 4(q^2 + q - 2)) = 2q + 1, so the bound is exactly 1.
    EXPECT_EQ(b.radicand, (2 * Rational(q) + 1) * (2 * Rational(q) + 1));
    EXPECT_EQ(b.a + Rational(2 * q + 1), b.d);
    EXPECT_EQ(b.threshold(), 1);
  }
  EXPECT_EQ(bound_small_improv(SpaceKind::kElliptic, 3, 3).threshold(), 4);
  EXPECT_EQ(bound_small_improv(SpaceKind::kHermitian, 3, 9).threshold(), 6);
}

TEST(BoundsTest, RadicandDeltaIsFourSMinusTwo) {
  for (auto kind : {SpaceKind::kElliptic, SpaceKind::kSymplectic, SpaceKind::kHermitian}) {
    for (int r = 2; r <= 10; ++r) {
      for (auto q : kOrders) {
        if (kind == SpaceKind::kHermitian && !as_prime_power(q)->is_square()) continue;
        const Rational delta = bound_small_improv(kind, r, q).radicand - bound_bklp(kind, r, q).radicand;
        EXPECT_EQ(delta, 4 * (Rational(q) - 2));
      }
    }
  }
}

TEST(BoundsTest, BdsHermitianSurface) {
  EXPECT_EQ(bound_bds_h4(4).threshold(), 2);
  const auto b9 = bound_bds_h4(9);
  EXPECT_EQ(b9.a, -12);
  EXPECT_EQ(b9.radicand, 688);
  EXPECT_EQ(b9.d, 8);
  EXPECT_EQ(b9.threshold(), 2);
  const auto b25 = bound_bds_h4(25);
  EXPECT_EQ(b25.radicand, 4 * 3125 - 4 * 625 + 125 - 10 + 1);
  EXPECT_EQ(b25.d, 36);
  EXPECT_EQ(b25.threshold(), 3);  // (-18 + sqrt(10116)) / 36 = 2.29...
  EXPECT_THROW(bound_bds_h4(8), std::invalid_argument);
}

TEST(BoundsTest, Main) {
  EXPECT_EQ(bound_main(SpaceKind::kSymplectic, 4, 3).threshold(), 5);
  EXPECT_EQ(bound_main(SpaceKind::kElliptic, 5, 3).threshold(), 18);
  EXPECT_EQ(bound_main(SpaceKind::kHermitian, 3, 9).threshold(), 8);
  EXPECT_EQ(bound_main(SpaceKind::kSymplectic, 4, 3).decimal(2), "4.26");
  EXPECT_EQ(bound_main(SpaceKind::kHermitian, 3, 9).decimal(2), "7.37");
  EXPECT_EQ(bound_small_improv(SpaceKind::kSymplectic, 2, 5).decimal(3), "1.000");
  EXPECT_TRUE(bound_main(SpaceKind::kSymplectic, 4, 3).uses_main_inequality);
  for (auto [kind, r, q] : {std::tuple{SpaceKind::kSymplectic, 3, 3}, std::tuple{SpaceKind::kElliptic, 3, 5},
                            std::tuple{SpaceKind::kSymplectic, 4, 2}, std::tuple{SpaceKind::kSymplectic, 2, 5}}) {
    const auto b = bound_main(kind, r, q);
    EXPECT_FALSE(b.applicable);
    EXPECT_FALSE(b.reason.empty());
  }
  EXPECT_TRUE(bound_main(SpaceKind::kSymplectic, 3, 4).applicable);
  EXPECT_TRUE(bound_main(SpaceKind::kElliptic, 4, 3).applicable);
}

TEST(BoundsTest, Q7) {
  EXPECT_EQ(bound_q7(3).threshold(), 2);
  EXPECT_EQ(bound_q7(5).threshold(), 6);
  EXPECT_EQ(bound_q7(243).threshold(), 345);
  EXPECT_THROW(bound_q7(2), std::invalid_argument);
}

TEST(BoundsTest, BestBound) {
  const auto e33 = best_bound(SpaceKind::kElliptic, 3, 3);
  EXPECT_EQ(e33.best, 4);
  EXPECT_EQ(e33.best_theorem, "small");
  EXPECT_EQ(*e33.find("q7")->threshold, 2);
  EXPECT_FALSE(e33.find("main")->threshold.has_value());

  const auto e37 = best_bound(SpaceKind::kElliptic, 3, 7);
  EXPECT_EQ(e37.best, 10);
  EXPECT_EQ(e37.best_theorem, "q7");
  EXPECT_EQ(e37.best_without_main_inequality, 8);
  EXPECT_EQ(e37.best_without_main_inequality_theorem, "small");

  const auto w22 = best_bound(SpaceKind::kSymplectic, 2, 2);
  EXPECT_EQ(w22.best, 1);
  EXPECT_EQ(w22.best_without_main_inequality, 1);

  const auto h44 = best_bound(SpaceKind::kHermitian, 2, 4);
  EXPECT_EQ(h44.best, 2);
  EXPECT_EQ(h44.best_theorem, "bds-h4");  // ties go to the later family

  // The asymptotic form never determines the best bound.
  const auto w73 = best_bound(SpaceKind::kSymplectic, 7, 3);
  EXPECT_EQ(w73.best_theorem, "main");
  EXPECT_EQ(w73.best, 39);
}

TEST(TablesTest, ReproducesThresholdTables) {
  const std::map<int, std::vector<std::vector<std::string>>> expected = {
      {3, {{"4", "5", "4"}, {"5", "10", "8"}, {"6", "20", "13"}, {"7", "39", "23"}, {"100", "2.53e24", "3.59e23"}}},
      {4, {{"4", "8", "8"}, {"5", "18", "13"}, {"6", "36", "23"}, {"7", "69", "40"}, {"100", "4.37e24", "6.22e23"}}},
      {5,
       {{"3", "8", "6"},
        {"4", "29", "18"},
        {"5", "99", "53"},
        {"6", "330", "158"},
        {"7", "1085", "474"},
        {"100", "1.04e48", "1.12e47"}}},
      {6, {{"3", "2", "4"}, {"4", "4", "5"}, {"5", "6", "6"}, {"7", "10", "8"}, {"8", "11", "9"}, {"243", "345", "244"}}},
  };
  for (const auto& [which, rows] : expected) {
    const Table t = emit_table(which);
    ASSERT_EQ(t.rows.size(), rows.size()) << which;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_EQ(t.rows[i].key, rows[i][0]);
      EXPECT_EQ(display(t.rows[i], true), rows[i][1]) << "table " << which << " row " << rows[i][0];
      EXPECT_EQ(display(t.rows[i], false), rows[i][2]) << "table " << which << " row " << rows[i][0];
    }
  }
  EXPECT_THROW(emit_table(2), std::invalid_argument);
}

// Exact r = 100 thresholds, computed independently with Python integers and
// fractions and frozen here.
TEST(TablesTest, ExactRankHundredRows) {
  EXPECT_EQ(emit_table(3).rows[4].first, BigInt("2525430026561543878876166"));
  EXPECT_EQ(emit_table(3).rows[4].second, BigInt("358948993845926294385124"));
  EXPECT_EQ(emit_table(4).rows[4].first, BigInt("4374173116964613309076669"));
  EXPECT_EQ(emit_table(4).rows[4].second, BigInt("621717894666872603985745"));
  EXPECT_EQ(emit_table(5).rows[5].first, BigInt("1038526866521140153758115321419966772021129346779"));
  EXPECT_EQ(emit_table(5).rows[5].second, BigInt("111582506373340753224219827310561400306047397107"));
}

TEST(TablesTest, CsvIsStable) {
  const std::string csv = table_csv(emit_table(3));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "table,r,main,small,main_exact,small_exact");
  EXPECT_NE(csv.find("\n3,4,5,4,5,4\n"), std::string::npos);
  EXPECT_EQ(csv, table_csv(emit_table(3)));
}

TEST(TablesTest, MainImprovesOnSmallInRankTables) {
  for (int which : {3, 4, 5}) {
    for (const auto& row : emit_table(which).rows) EXPECT_GE(row.first, row.second) << which << " " << row.key;
  }
}

TEST(ScientificTest, RoundHalfEven) {
  EXPECT_EQ(scientific3(BigInt(123)), "123");
  EXPECT_EQ(scientific3(BigInt(1085)), "1.08e3");
  EXPECT_EQ(scientific3(BigInt(1095)), "1.10e3");
  EXPECT_EQ(scientific3(BigInt(2525)), "2.52e3");
  EXPECT_EQ(scientific3(BigInt(2535)), "2.54e3");
  EXPECT_EQ(scientific3(BigInt(25251)), "2.53e4");
  EXPECT_EQ(scientific3(BigInt(999500)), "1.00e6");
  EXPECT_EQ(scientific3(BigInt(1000)), "1.00e3");
  EXPECT_EQ(table_display(BigInt(999999)), "999999");
  EXPECT_EQ(table_display(BigInt(1234567)), "1.23e6");
}

// Non-decreasing in r at fixed q and in q at fixed r, over applicable cells.
TEST(BoundsTest, Monotonicity) {
  using Family = RadicalBound (*)(SpaceKind, int, std::uint64_t);
  const std::vector<std::pair<std::string, Family>> families = {
      {"bklp", bound_bklp}, {"small", bound_small_improv}, {"main", bound_main}};
  for (const auto& [name, family] : families) {
    for (auto kind : {SpaceKind::kElliptic, SpaceKind::kSymplectic, SpaceKind::kHermitian}) {
      std::map<std::pair<int, std::uint64_t>, BigInt> value;
      for (int r = 2; r <= 12; ++r) {
        for (auto q : kOrders) {
          if (kind == SpaceKind::kHermitian && !as_prime_power(q)->is_square()) continue;
          const auto b = family(kind, r, q);
          if (b.applicable) value[{r, q}] = b.threshold();
        }
      }
      for (const auto& [key, t] : value) {
        const auto next_r = value.find({key.first + 1, key.second});
        if (next_r != value.end()) EXPECT_GE(next_r->second, t) << name << " r=" << key.first << " q=" << key.second;
        for (auto q : kOrders) {
          if (q <= key.second) continue;
          const auto next_q = value.find({key.first, q});
          if (next_q == value.end()) continue;
          EXPECT_GE(next_q->second, t) << name << " r=" << key.first << " q=" << key.second;
          break;
        }
      }
    }
  }
}

}  // namespace
}  // namespace movoid
