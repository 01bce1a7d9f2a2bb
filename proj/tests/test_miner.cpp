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

#include <algorithm>
#include <sstream>

#include "op3m/measures.hpp"
#include "op3m/miner.hpp"
#include "op3m/oracle.hpp"
#include "running_example.hpp"

namespace op3m {
namespace {

using namespace op3m::testing;
namespace m = op3m::measures;

MiningParams params(const char* minfre, const char* minpro, ProfitScope scope = ProfitScope::kGlobal) {
  MiningParams p;
  p.minfre = Threshold::parse(minfre);
  p.minpro = Threshold::parse(minpro);
  p.scope = scope;
  return p;
}

const OpppResult* find(const MineOutput& out, const ItemSet& x) {
  for (const auto& r : out.patterns)
    if (r.items == x) return &r;
  return nullptr;
}

TEST(Miner, FindsEWithGlobalScope) {
  Database db = running_example();
  MineOutput out = mine(db, params("0.5", "0.4"));
  const OpppResult* r = find(out, {e});
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->profit, Money::from_units(56));
  EXPECT_EQ(r->period_total, Money::from_units(117));
  EXPECT_TRUE(r->relative_profit().same_value({56, 117}));
  EXPECT_EQ(r->periods, (std::vector<PeriodId>{1, 2, 3}));
  EXPECT_EQ(r->qualifying, (std::vector<PeriodId>{1, 2, 3}));
  EXPECT_EQ(format_result(*r), "5\t56\t0.478632\t1,2,3\t1,2,3");
}

TEST(Miner, ThresholdAboveOneFindsNothing) {
  Database db = running_example();
  EXPECT_TRUE(mine(db, params("0", "2.0")).patterns.empty());
  EXPECT_TRUE(mine(db, params("0", "2.0", ProfitScope::kPerPeriod)).patterns.empty());
}

TEST(Miner, ZeroThresholdsKeepNonNegativeProfit) {
  Database db = running_example();
  MineOutput out = mine(db, params("0", "0"));
  EXPECT_EQ(find(out, {b}), nullptr);
  EXPECT_NE(find(out, {c, e}), nullptr);
  for (const auto& r : out.patterns) EXPECT_FALSE(r.profit.negative()) << r.items.to_string();
  // Exactly the co-occurring itemsets with p(X) >= 0.
  auto report = oracle::enumerate(db, params("0", "0"));
  std::size_t expected = 0;
  for (std::uint32_t mask = 1; mask < 64; ++mask) {
    std::vector<ItemId> x;
    for (ItemId i = 1; i <= 6; ++i)
      if (mask >> (i - 1) & 1U) x.push_back(i);
    ItemSet s(x);
    if (m::support(s, db) > 0 && !m::profit(s, db).negative()) ++expected;
  }
  EXPECT_EQ(out.patterns.size(), expected);
  EXPECT_TRUE(oracle::diff(out.patterns, report.patterns).empty());
}

TEST(Miner, OutputIsSortedByItemIds) {
  Database db = running_example();
  MineOutput out = mine(db, params("0", "0"));
  EXPECT_TRUE(std::is_sorted(out.patterns.begin(), out.patterns.end(),
                             [](const auto& x, const auto& y) { return x.items < y.items; }));
}

TEST(Miner, MatchesOracleOnRunningExample) {
  Database db = running_example();
  for (const char* minfre : {"0.5", "0.4"})
    for (const char* minpro : {"0.1", "0.4"})
      for (ProfitScope scope : {ProfitScope::kGlobal, ProfitScope::kPerPeriod}) {
        MiningParams p = params(minfre, minpro, scope);
        oracle::Diff d = oracle::diff(mine(db, p).patterns, oracle::enumerate(db, p).patterns);
        EXPECT_TRUE(d.empty()) << minfre << " " << minpro << " " << to_string(scope) << "\n" << d.to_string();
      }
}

TEST(Miner, PerPeriodScopeQualifiesSamePeriod) {
  Database db = running_example();
  MineOutput out = mine(db, params("0.5", "0.6", ProfitScope::kPerPeriod));
  // e: 21/35 in period 1, 14/51 in period 2, 21/31 in period 3.
  const OpppResult* r = find(out, {e});
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->qualifying, (std::vector<PeriodId>{1, 3}));
  // Globally 56/117 is below 0.6.
  EXPECT_EQ(find(mine(db, params("0.5", "0.6")), {e}), nullptr);
}

TEST(Miner, FilterSingletons) {
  Database db = running_example();
  EXPECT_EQ(filter_singletons(db, params("0", "0")), (std::vector<ItemId>{a, b, c, d, e, f}));
  auto strict = filter_singletons(db, params("0", "0.99"));
  EXPECT_TRUE(std::ranges::find(strict, e) != strict.end());

  // Item 2 only ever appears alone, so its RTWU is zero everywhere.
  std::istringstream in("1\t1\t2:3\n2\t1\t1:1 3:1\n3\t2\t2:1\n");
  Database lonely = load_transactions(in, running_profits());
  auto kept = filter_singletons(lonely, params("0", "0.01"));
  EXPECT_TRUE(std::ranges::find(kept, ItemId{2}) == kept.end());
  EXPECT_EQ(kept.size(), 2u);
}

TEST(Miner, PrefixCIsNotExpandedAtHighMinpro) {
  Database db = running_example();
  MiningParams p = params("0.5", "0.95");
  MineOutput out = mine(db, p);
  for (const auto& r : out.patterns) EXPECT_FALSE(r.items.contains(c) && r.items.size() > 1);
  EXPECT_TRUE(oracle::enumerate(db, p).patterns.empty());
  EXPECT_TRUE(out.patterns.empty());
}

TEST(Miner, ReadsTheDatabaseTwice) {
  Database db = running_example();
  for (ProfitScope scope : {ProfitScope::kGlobal, ProfitScope::kPerPeriod}) {
    MineOutput out = mine(db, params("0.2", "0.1", scope));
    EXPECT_EQ(out.stats.scans, 2u);
  }
  MiningParams p = params("0", "0");
  p.prune_pairs = false;
  EXPECT_EQ(mine(db, p).stats.scans, 2u);
}

TEST(Miner, RejectsInvalidParams) {
  Database db = running_example();
  EXPECT_THROW(mine(db, params("1.5", "0")), std::invalid_argument);
  MiningParams p = params("0", "0");
  p.threads = 0;
  EXPECT_THROW(mine(db, p), std::invalid_argument);
}

TEST(Miner, EmptyDatabase) {
  Database db = Database::from_raw({}, running_profits());
  MineOutput out = mine(db, params("0", "0"));
  EXPECT_TRUE(out.patterns.empty());
  EXPECT_EQ(out.stats.scans, 2u);
}

TEST(Miner, ScopeNames) {
  EXPECT_EQ(parse_scope("global"), ProfitScope::kGlobal);
  EXPECT_EQ(parse_scope("per-period"), ProfitScope::kPerPeriod);
  EXPECT_EQ(to_string(ProfitScope::kPerPeriod), "per-period");
  EXPECT_THROW(parse_scope("local"), std::invalid_argument);
}

TEST(Miner, NonPositiveTopIsSkippedNotDivided) {
  // Period 1 nets to -5 and period 2 to +5, so top({1}) = 0.
  std::istringstream pt_in("1\t1\n2\t-6\n3\t4\n");
  ProfitTable pt = parse_profit_table(pt_in);
  std::istringstream in("1\t1\t1:1 2:1\n2\t2\t1:1 3:1\n");
  Database db = load_transactions(in, pt);
  MineOutput out = mine(db, params("0", "0"));
  EXPECT_GT(out.stats.skipped_nonpositive_top, 0u);
  for (const auto& r : out.patterns) EXPECT_NE(r.items, (ItemSet{1}));
  EXPECT_TRUE(oracle::diff(out.patterns, oracle::enumerate(db, params("0", "0")).patterns).empty());
}

// --- properties over random databases ---

TEST(MinerProperty, ThreadCountDoesNotChangeOutput) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Database db = to_database(gen::random_small(seed, 12, 40, 4));
    MiningParams p = params("0.2", "0.1");
    MineOutput serial = mine(db, p);
    p.threads = 4;
    MineOutput parallel = mine(db, p);
    EXPECT_EQ(serial.patterns, parallel.patterns) << "seed " << seed;
    EXPECT_EQ(serial.stats.visited_nodes, parallel.stats.visited_nodes);
  }
}

TEST(MinerProperty, PruningIsNeutral) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Database db = to_database(gen::random_small(seed, 10, 40, 4));
    for (ProfitScope scope : {ProfitScope::kGlobal, ProfitScope::kPerPeriod}) {
      MiningParams p = params("0.2", "0.3", scope);
      MineOutput pruned = mine(db, p);
      p.prune_freq = p.prune_rpp = p.prune_pairs = false;
      MineOutput plain = mine(db, p);
      EXPECT_EQ(pruned.patterns, plain.patterns) << "seed " << seed;
      EXPECT_LE(pruned.stats.visited_nodes, plain.stats.visited_nodes);
    }
  }
}

TEST(MinerProperty, PairBudgetOnlyChangesWork) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Database db = to_database(gen::random_small(seed, 12, 40, 4));
    MiningParams p = params("0", "0.3");
    MineOutput with = mine(db, p);
    p.pair_table_budget = 0;
    MineOutput without = mine(db, p);
    if (without.stats.promising_items > 1) EXPECT_FALSE(without.stats.pair_table_used);
    EXPECT_EQ(with.patterns, without.patterns);
  }
}

TEST(MinerProperty, ResultsSatisfyDefinition) {
  for (std::uint64_t seed = 50; seed < 80; ++seed) {
    Database db = to_database(gen::random_small(seed));
    MiningParams p = params("0.2", "0.1");
    for (const auto& r : mine(db, p).patterns) {
      EXPECT_FALSE(r.qualifying.empty());
      EXPECT_TRUE(r.relative_profit().at_least(p.minpro));
      EXPECT_EQ(r.profit, m::profit(r.items, db));
      EXPECT_EQ(r.period_total, m::total_period_profit(r.items, db));
      for (PeriodId h : r.qualifying) EXPECT_TRUE(m::relative_frequency(r.items, h, db).at_least(p.minfre));
    }
  }
}

}  // namespace
}  // namespace op3m
