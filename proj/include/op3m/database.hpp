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

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "op3m/money.hpp"
#include "op3m/period_set.hpp"

namespace op3m {

using ItemId = std::uint32_t;
using Tid = std::int64_t;
using PeriodId = std::int64_t;

/// Malformed or inconsistent input. `line` is 1-based, 0 when not tied to a line.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// item -> signed unit profit.
class ProfitTable {
 public:
  /// Throws InputError on a duplicate item.
  void insert(ItemId item, Money unit_profit);
  std::optional<Money> find(ItemId item) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<ItemId, Money>& entries() const { return entries_; }

  friend bool operator==(const ProfitTable&, const ProfitTable&) = default;

 private:
  std::map<ItemId, Money> entries_;
};

struct ItemQuantity {
  ItemId item = 0;
  std::int64_t quantity = 0;
  friend bool operator==(const ItemQuantity&, const ItemQuantity&) = default;
};

/// A transaction as it appears in the native file, before profits are attached.
struct RawTransaction {
  Tid tid = 0;
  PeriodId period = 0;
  std::vector<ItemQuantity> items;
  friend bool operator==(const RawTransaction&, const RawTransaction&) = default;
};

struct TxItem {
  ItemId item = 0;
  std::int64_t quantity = 0;
  Money profit;  // p(i, Tc)
  friend bool operator==(const TxItem&, const TxItem&) = default;
};

struct Transaction {
  Tid tid = 0;
  PeriodId period = 0;
  std::uint32_t period_index = 0;
  std::vector<TxItem> items;  // ascending item id
  Money tp;                   // sum of all item profits
  Money rtp;                  // sum of non-negative item profits

  /// Position of `item` in items, or nullopt.
  std::optional<std::size_t> find(ItemId item) const;
  friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct LoadOptions {
  /// Sum quantities of repeated items in one transaction instead of rejecting.
  bool merge_duplicates = false;
};

/// Immutable quantitative transaction database with per-period aggregates.
///
/// Period ids are remapped to dense indices 0..period_count()-1 in ascending
/// id order; PeriodSets and per-period tables are indexed by that position.
/// Transactions are kept sorted by tid.
class Database {
 public:
  Database() = default;

  /// Builds from raw records and unit profits. Throws InputError for unknown
  /// items, duplicate tids, or invalid quantities.
  static Database from_raw(std::vector<RawTransaction> raw, const ProfitTable& table);

  /// Builds from transactions whose per-item profits are already known.
  /// An item is classed negative when any occurrence has negative profit.
  static Database from_profits(std::vector<Transaction> txs);

  std::span<const Transaction> transactions() const { return transactions_; }
  std::size_t size() const { return transactions_.size(); }

  /// Sorted distinct item ids occurring in any transaction.
  std::span<const ItemId> items() const { return items_; }
  bool is_negative(ItemId item) const;

  std::span<const PeriodId> periods() const { return periods_; }
  std::size_t period_count() const { return periods_.size(); }
  std::optional<std::uint32_t> period_index(PeriodId id) const;
  PeriodId period_id(std::size_t index) const { return periods_[index]; }

  /// top(h): total transaction profit of period h; zero for unused ids.
  Money period_profit(PeriodId h) const;
  /// sup(h): transaction count of period h; zero for unused ids.
  std::int64_t period_support(PeriodId h) const;

  Money period_profit_at(std::size_t index) const { return top_by_index_[index]; }
  std::int64_t period_support_at(std::size_t index) const { return sup_by_index_[index]; }

  /// Transaction with the given tid, or nullptr.
  const Transaction* find_tid(Tid tid) const;
  Money tp(Tid tid) const;
  Money rtp(Tid tid) const;

  /// Full pass over the transactions, counted in passes(). The miner reads
  /// the database only through this.
  void scan(const std::function<void(const Transaction&)>& visit) const;
  std::uint64_t passes() const { return passes_.load(std::memory_order_relaxed); }

  /// Unit-profit table the database was built from, when there was one.
  const std::optional<ProfitTable>& profit_table() const { return table_; }

  /// Back to raw records (quantities only).
  std::vector<RawTransaction> to_raw() const;

  friend bool operator==(const Database& a, const Database& b) {
    return a.transactions_ == b.transactions_ && a.negative_items_ == b.negative_items_ &&
           a.table_ == b.table_;
  }

 private:
  void finalize();

  struct PassCounter {
    std::atomic<std::uint64_t> n{0};
    PassCounter() = default;
    PassCounter(const PassCounter& o) : n(o.n.load()) {}
    PassCounter& operator=(const PassCounter& o) {
      n.store(o.n.load());
      return *this;
    }
    std::uint64_t load(std::memory_order m) const { return n.load(m); }
  };

  std::vector<Transaction> transactions_;
  std::vector<ItemId> items_;
  std::vector<ItemId> negative_items_;
  std::vector<PeriodId> periods_;
  std::vector<Money> top_by_index_;
  std::vector<std::int64_t> sup_by_index_;
  std::optional<ProfitTable> table_;
  mutable PassCounter passes_;
};

// Native text formats. Lines may end in LF or CRLF; '#' comments and blank
// lines are skipped.
//   profit table:  <item>\t<unit-profit>
//   transactions:  <tid>\t<period>\t<item>:<qty>[ <item>:<qty>]...
ProfitTable parse_profit_table(std::istream& in);
std::vector<RawTransaction> parse_transactions(std::istream& in, const LoadOptions& options = {});
Database load_transactions(std::istream& in, const ProfitTable& table, const LoadOptions& options = {});

/// SPMF-style lines `i1 i2 ... ik:TU:u1 u2 ... uk:period`, u_j being the
/// item's profit in that transaction. Tids are assigned 1, 2, ... by line.
Database load_spmf_period(std::istream& in, const LoadOptions& options = {});

void write_profit_table(std::ostream& out, const ProfitTable& table);
void write_transactions(std::ostream& out, std::span<const RawTransaction> txs);

}  // namespace op3m
