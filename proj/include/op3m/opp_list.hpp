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

#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "op3m/database.hpp"
#include "op3m/itemset.hpp"
#include "op3m/money.hpp"
#include "op3m/period_set.hpp"

namespace op3m {

/// One row of an OPP-list: the itemset's profit split in one transaction.
struct OppEntry {
  Tid tid = 0;
  Money pp;   // >= 0
  Money np;   // <= 0
  Money rpp;  // remaining positive profit, >= 0
  std::uint32_t period = 0;  // dense period index

  friend bool operator==(const OppEntry&, const OppEntry&) = default;
};

struct PeriodTotals {
  std::uint32_t period = 0;  // dense period index
  std::int64_t sup = 0;
  Money pp;
  Money np;
  Money rpp;

  friend bool operator==(const PeriodTotals&, const PeriodTotals&) = default;
};

/// Column sums of an OPP-list, globally and for each period the list touches.
struct OfuTable {
  std::int64_t sup = 0;
  Money pp;
  Money np;
  Money rpp;
  std::vector<PeriodTotals> by_period;  // ascending period index, only touched periods

  /// Aggregates `entries`; period indices must be < period_count.
  static OfuTable summarize(std::span<const OppEntry> entries, std::size_t period_count);

  const PeriodTotals* at(std::uint32_t period) const;
  Money profit() const { return pp + np; }

  friend bool operator==(const OfuTable&, const OfuTable&) = default;
};

class OppList {
 public:
  OppList() = default;
  /// `path` lists the items in mining order; entries must be tid-sorted.
  OppList(std::vector<ItemId> path, std::vector<OppEntry> entries, std::size_t period_count);

  /// Items in mining order (last = most recently appended).
  std::span<const ItemId> path() const { return path_; }
  ItemId last() const { return path_.back(); }
  ItemSet label() const { return ItemSet(path_); }

  std::span<const OppEntry> entries() const { return entries_; }
  const OfuTable& table() const { return table_; }
  bool empty() const { return entries_.empty(); }

  /// os(X) as a PeriodSet over `period_count` periods.
  PeriodSet periods(std::size_t period_count) const;

  /// Bytes held by the entries; used for resident-memory estimates.
  std::size_t footprint() const { return entries_.capacity() * sizeof(OppEntry); }

  /// TSV dump, one `tid pp np rpp period` row per entry (period as id).
  void dump(std::ostream& out, const Database& db) const;

 private:
  std::vector<ItemId> path_;
  std::vector<OppEntry> entries_;
  OfuTable table_;
};

/// Orders every item of the database (see ItemOrder).
ItemOrder build_item_order(const Database& db);

/// Builds the same order from precomputed singleton RTWU values.
ItemOrder build_item_order(std::span<const ItemId> items, std::span<const Money> rtwu, const Database& db);

/// An item of a transaction projected onto the mining order.
struct RankedItem {
  std::uint32_t rank = 0;
  Money profit;
};

using RankedVisitor = std::function<void(const Transaction&, std::span<const RankedItem>)>;

/// One list per item of `order`, in order, from a single database pass.
/// rpp sums only items of `order`, so items left out of the order contribute
/// nothing anywhere. `visit`, when set, sees each transaction's rank-sorted
/// projection during the same pass.
std::vector<OppList> build_initial_lists(const Database& db, const ItemOrder& order,
                                         const RankedVisitor& visit = {});

/// Joins the lists of P+x and P+y (x before y) into the list of P+x+y.
/// `prefix` is the list of P, or nullptr when P is empty. Entries exist only
/// for tids present in both inputs; with a prefix its pp/np are subtracted
/// once, and rpp comes from the P+y entry.
OppList construct(const OppList* prefix, const OppList& px, const OppList& py, std::size_t period_count);

/// Builds the list of an arbitrary itemset by repeated joins, following
/// `order` (all items of x must be in it).
OppList build_list(const ItemSet& x, const Database& db, const ItemOrder& order);

}  // namespace op3m
