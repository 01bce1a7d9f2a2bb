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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "op3m/database.hpp"
#include "op3m/itemset.hpp"
#include "op3m/money.hpp"

namespace op3m {

enum class ProfitScope {
  /// Popular in some period and p(X) / top(X) >= minpro.
  kGlobal,
  /// Popular and p(X, h) / top(h) >= minpro in the same period h.
  kPerPeriod,
};

std::string to_string(ProfitScope scope);
/// "global" or "per-period"; throws std::invalid_argument otherwise.
ProfitScope parse_scope(const std::string& text);

struct MiningParams {
  Threshold minfre{0, 1};
  Threshold minpro{0, 1};
  ProfitScope scope = ProfitScope::kGlobal;

  bool prune_freq = true;   // relative-frequency anti-monotonicity
  bool prune_rpp = true;    // pp + rpp upper bound
  bool prune_pairs = true;  // per-period RTWU of item pairs
  /// Cell budget for the pair table (pairs x periods); above it the table
  /// is not built and pair pruning is off for the run.
  std::uint64_t pair_table_budget = std::uint64_t{1} << 23;

  int threads = 1;

  /// Throws std::invalid_argument when minfre is outside [0, 1] or threads < 1.
  void validate() const;
};

/// One discovered pattern.
struct OpppResult {
  ItemSet items;
  Money profit;        // p(X)
  Money period_total;  // top(X)
  std::vector<PeriodId> periods;     // os(X)
  std::vector<PeriodId> qualifying;  // periods satisfying the scope's per-period test
  std::vector<std::pair<PeriodId, std::int64_t>> support;  // sup(X, h) for h in os(X)

  /// rp(X) = p(X) / top(X).
  Fraction relative_profit() const { return {profit.minor(), period_total.minor()}; }

  friend bool operator==(const OpppResult&, const OpppResult&) = default;
};

struct MineStats {
  std::uint64_t visited_nodes = 0;       // itemsets evaluated
  std::uint64_t constructed_lists = 0;   // joins performed
  std::uint64_t pruned_freq = 0;         // nodes not expanded: no popular period
  std::uint64_t pruned_rpp = 0;          // nodes not expanded: pp + rpp bound
  std::uint64_t pruned_pairs = 0;        // joins skipped: pair RTWU bound
  std::uint64_t skipped_nonpositive_top = 0;  // popular nodes with top(X) <= 0
  std::uint64_t items = 0;               // distinct items in the database
  std::uint64_t promising_items = 0;     // |I*|
  bool pair_table_used = false;
  std::uint64_t peak_resident_lists = 0;
  std::uint64_t peak_resident_bytes = 0;
  std::uint64_t scans = 0;               // database passes during the run
  double wall_seconds = 0.0;

  MineStats& operator+=(const MineStats& o);
};

struct MineOutput {
  std::vector<OpppResult> patterns;  // ascending by item ids
  MineStats stats;
};

/// I*: items for which some period h in os({i}) has RTWU({i}, h) >= minpro *
/// top(h), subject to the scope's positivity conditions. Items failing it
/// cannot belong to any OPPP. Costs one database pass.
std::vector<ItemId> filter_singletons(const Database& db, const MiningParams& params);

/// Discovers every OPPP of `db` under `params`. Reads the database exactly
/// twice. Output is identical for any thread count.
MineOutput mine(const Database& db, const MiningParams& params);

/// Canonical ordering used for all result lists.
void sort_results(std::vector<OpppResult>& results);

/// `<items>\t<p(X)>\t<rp(X), 6 places>\t<os(X)>\t<qualifying periods>`
std::string format_result(const OpppResult& r);
void write_results(std::ostream& out, std::span<const OpppResult> results);

}  // namespace op3m
