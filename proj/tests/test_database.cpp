// Copyright 2026 The op3m Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "op3m/database.hpp"
#include "op3m/generator.hpp"
#include "running_example.hpp"

namespace op3m {
namespace {

using namespace op3m::testing;

Money units(std::int64_t u) { return Money::from_units(u); }

TEST(ProfitTable, LoadsRunningExample) {
  ProfitTable pt = running_profits();
  EXPECT_EQ(pt.size(), 6u);
  EXPECT_EQ(*pt.find(b), units(-2));
  EXPECT_EQ(*pt.find(e), units(7));
  EXPECT_FALSE(pt.find(9).has_value());
}

TEST(ProfitTable, EmptyStreamIsEmptyTable) {
  std::istringstream in("");
  EXPECT_TRUE(parse_profit_table(in).empty());
}

TEST(ProfitTable, RejectsDuplicatesAndGarbage) {
  std::istringstream dup("3\t1\n3\t2\n");
  EXPECT_THROW(parse_profit_table(dup), InputError);
  std::istringstream bad("3\tx\n");
  EXPECT_THROW(parse_profit_table(bad), InputError);
  std::istringstream fields("3 1\n");
  EXPECT_THROW(parse_profit_table(fields), InputError);
}

TEST(ProfitTable, AcceptsCrlfAndComments) {
  std::istringstream in("# header\r\n\r\n1\t2.5\r\n");
  ProfitTable pt = parse_profit_table(in);
  EXPECT_EQ(*pt.find(1), Money::parse("2.5"));
}

TEST(Database, TransactionProfits) {
  Database db = running_example();
  ASSERT_EQ(db.size(), 5u);
  EXPECT_EQ(db.period_count(), 3u);
  const std::int64_t tp[] = {21, 14, 31, 20, 31};
  const std::int64_t rtp[] = {25, 16, 43, 20, 31};
  for (Tid t = 1; t <= 5; ++t) {
    EXPECT_EQ(db.tp(t), units(tp[t - 1])) << "T" << t;
    EXPECT_EQ(db.rtp(t), units(rtp[t - 1])) << "T" << t;
  }
}

TEST(Database, PeriodAggregates) {
  Database db = running_example();
  EXPECT_EQ(db.period_profit(1), units(35));
  EXPECT_EQ(db.period_profit(3), units(31));
  EXPECT_EQ(db.period_profit(9), Money{});
  EXPECT_EQ(db.period_support(1), 2);
  EXPECT_EQ(db.period_support(3), 1);
  EXPECT_EQ(db.period_support(9), 0);
}

TEST(Database, AllNegativeTransaction) {
  std::istringstream in("7\t1\t2:2\n");
  Database db = load_transactions(in, running_profits());
  EXPECT_EQ(db.tp(7), units(-4));
  EXPECT_EQ(db.rtp(7), Money{});
}

TEST(Database, LoadErrors) {
  ProfitTable pt = running_profits();
  std::istringstream unknown("1\t1\t9:1\n");
  EXPECT_THROW(load_transactions(unknown, pt), InputError);
  std::istringstream zero_qty("1\t1\t1:0\n");
  EXPECT_THROW(load_transactions(zero_qty, pt), InputError);
  std::istringstream dup("1\t1\t1:1 1:2\n");
  EXPECT_THROW(load_transactions(dup, pt), InputError);
  std::istringstream dup_tid("1\t1\t1:1\n1\t2\t2:1\n");
  EXPECT_THROW(load_transactions(dup_tid, pt), InputError);
  std::istringstream bad_pair("1\t1\t1-1\n");
  EXPECT_THROW(load_transactions(bad_pair, pt), InputError);
}

TEST(Database, MergeDuplicatesSumsQuantities) {
  std::istringstream in("1\t1\t1:1 1:2 3:1\n");
  Database db = load_transactions(in, running_profits(), {.merge_duplicates = true});
  const Transaction& t = db.transactions()[0];
  ASSERT_EQ(t.items.size(), 2u);
  EXPECT_EQ(t.items[0].quantity, 3);
  EXPECT_EQ(db.tp(1), units(3 * 3 + 4));
}

TEST(Database, ErrorCarriesLineNumber) {
  std::istringstream in("# c\n1\t1\t1:1\n2\t1\tz:1\n");
  try {
    parse_transactions(in);
    FAIL();
  } catch (const InputError& err) {
    EXPECT_EQ(err.line(), 3u);
  }
}

TEST(Database, NonContiguousPeriods) {
  std::istringstream in("1\t20240101\t1:1\n2\t7\t3:1\n3\t20240101\t5:1\n");
  Database db = load_transactions(in, running_profits());
  EXPECT_EQ(db.period_count(), 2u);
  EXPECT_EQ(db.period_id(0), 7);
  EXPECT_EQ(db.period_profit(20240101), units(10));
  EXPECT_EQ(*db.period_index(20240101), 1u);
}

TEST(Database, SpmfPeriodFormat) {
  // Item utilities taken verbatim; b (2) is loss-making.
  std::istringstream in("2 3 5:21:-4 4 21:1\r\n1 4:5:3 2:3\n");
  Database db = load_spmf_period(in);
  ASSERT_EQ(db.size(), 2u);
  EXPECT_EQ(db.tp(1), units(21));
  EXPECT_EQ(db.rtp(1), units(25));
  EXPECT_EQ(db.period_profit(3), units(5));
  EXPECT_TRUE(db.is_negative(2));
  EXPECT_FALSE(db.is_negative(3));
  EXPECT_FALSE(db.profit_table().has_value());

  std::istringstream mismatch("1 2:3:1:1\n");
  EXPECT_THROW(load_spmf_period(mismatch), InputError);
}

TEST(Database, NegativeClassFromProfitTable) {
  Database db = running_example();
  EXPECT_TRUE(db.is_negative(b));
  for (ItemId i : {a, c, d, e, f}) EXPECT_FALSE(db.is_negative(i));
}

TEST(Database, ScanCountsPasses) {
  Database db = running_example();
  std::size_t seen = 0;
  db.scan([&](const Transaction&) { ++seen; });
  db.scan([&](const Transaction&) {});
  EXPECT_EQ(seen, 5u);
  EXPECT_EQ(db.passes(), 2u);
}

// Aggregate invariants over random databases.
TEST(DatabaseProperty, AggregatesAreConsistent) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Database db = to_database(gen::random_small(seed));
    Money sum_tp, sum_top;
    std::int64_t sum_sup = 0;
    for (const auto& t : db.transactions()) {
      sum_tp += t.tp;
      EXPECT_GE(t.rtp, t.tp);
      bool any_negative = std::any_of(t.items.begin(), t.items.end(), [](const auto& i) { return i.profit.negative(); });
      EXPECT_EQ(t.rtp == t.tp, !any_negative);
    }
    for (std::size_t h = 0; h < db.period_count(); ++h) {
      sum_top += db.period_profit_at(h);
      sum_sup += db.period_support_at(h);
    }
    EXPECT_EQ(sum_top, sum_tp) << "seed " << seed;
    EXPECT_EQ(sum_sup, static_cast<std::int64_t>(db.size()));
  }
}

TEST(DatabaseProperty, SerializeReloadRoundTrips) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    gen::Dataset data = gen::random_small(seed);
    Database db = to_database(data);
    std::ostringstream pt_out, tx_out;
    write_profit_table(pt_out, *db.profit_table());
    auto raw = db.to_raw();
    write_transactions(tx_out, raw);
    std::istringstream pt_in(pt_out.str()), tx_in(tx_out.str());
    ProfitTable pt = parse_profit_table(pt_in);
    Database again = load_transactions(tx_in, pt);
    EXPECT_EQ(again, db) << "seed " << seed;
    std::ostringstream tx_out2;
    write_transactions(tx_out2, again.to_raw());
    EXPECT_EQ(tx_out2.str(), tx_out.str());
  }
}

}  // namespace
}  // namespace op3m
