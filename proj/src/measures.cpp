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

#include "op3m/measures.hpp"

namespace op3m::measures {
namespace {

void require_contained(const ItemSet& x, const Transaction& tx) {
  if (!contains(tx, x))
    throw ContainmentError("itemset {" + x.to_string() + "} not contained in transaction " + std::to_string(tx.tid));
}

template <typename Keep>
Money sum_profits(const ItemSet& x, const Transaction& tx, Keep keep) {
  require_contained(x, tx);
  Money total;
  for (ItemId i : x) {
    Money p = tx.items[*tx.find(i)].profit;
    if (keep(p)) total += p;
  }
  return total;
}

std::uint32_t require_period(PeriodId h, const Database& db) {
  auto idx = db.period_index(h);
  if (!idx) throw DomainError("period " + std::to_string(h) + " has no transactions");
  return *idx;
}

}  // namespace

bool contains(const Transaction& tx, const ItemSet& x) {
  for (ItemId i : x)
    if (!tx.find(i)) return false;
  return true;
}

Money profit_in_tx(const ItemSet& x, const Transaction& tx) {
  return sum_profits(x, tx, [](Money) { return true; });
}

Money positive_profit_in_tx(const ItemSet& x, const Transaction& tx) {
  return sum_profits(x, tx, [](Money p) { return !p.negative(); });
}

Money negative_profit_in_tx(const ItemSet& x, const Transaction& tx) {
  return sum_profits(x, tx, [](Money p) { return p.negative(); });
}

PeriodSet periods(const ItemSet& x, const Database& db) {
  PeriodSet os(db.period_count());
  for (const auto& tx : db.transactions())
    if (contains(tx, x)) os.set(tx.period_index);
  return os;
}

std::int64_t support_in_period(const ItemSet& x, PeriodId h, const Database& db) {
  std::int64_t n = 0;
  for (const auto& tx : db.transactions())
    if (tx.period == h && contains(tx, x)) ++n;
  return n;
}

std::int64_t support(const ItemSet& x, const Database& db) {
  std::int64_t n = 0;
  for (const auto& tx : db.transactions())
    if (contains(tx, x)) ++n;
  return n;
}

Money profit_in_period(const ItemSet& x, PeriodId h, const Database& db) {
  Money total;
  bool seen = false;
  for (const auto& tx : db.transactions()) {
    if (tx.period != h || !contains(tx, x)) continue;
    seen = true;
    total += profit_in_tx(x, tx);
  }
  if (!seen) throw DomainError("period " + std::to_string(h) + " not in os({" + x.to_string() + "})");
  return total;
}

Money profit(const ItemSet& x, const Database& db) {
  Money total;
  for (const auto& tx : db.transactions())
    if (contains(tx, x)) total += profit_in_tx(x, tx);
  return total;
}

Money total_period_profit(const ItemSet& x, const Database& db) {
  PeriodSet os = periods(x, db);
  if (os.empty()) throw DomainError("os({" + x.to_string() + "}) is empty");
  Money total;
  for (const auto& tx : db.transactions())
    if (os.test(tx.period_index)) total += tx.tp;
  return total;
}

Fraction relative_profit(const ItemSet& x, const Database& db) {
  Money top = total_period_profit(x, db);
  if (top == Money{}) throw DomainError("top({" + x.to_string() + "}) is zero");
  return {profit(x, db).minor(), top.minor()};
}

Fraction relative_frequency(const ItemSet& x, PeriodId h, const Database& db) {
  std::uint32_t idx = require_period(h, db);
  return {support_in_period(x, h, db), db.period_support_at(idx)};
}

Fraction relative_profit_in_period(const ItemSet& x, PeriodId h, const Database& db) {
  Money p = profit_in_period(x, h, db);
  Money top = db.period_profit(h);
  if (top == Money{}) throw DomainError("top(" + std::to_string(h) + ") is zero");
  return {p.minor(), top.minor()};
}

Money rtwu(const ItemSet& x, const Database& db) {
  Money total;
  for (const auto& tx : db.transactions())
    if (contains(tx, x)) total += tx.rtp;
  return total;
}

Money rtwu_in_period(const ItemSet& x, PeriodId h, const Database& db) {
  Money total;
  for (const auto& tx : db.transactions())
    if (tx.period == h && contains(tx, x)) total += tx.rtp;
  return total;
}

Money remaining_positive_profit(const ItemSet& x, const Transaction& tx, const ItemOrder& order) {
  require_contained(x, tx);
  std::uint32_t last = 0;
  for (ItemId i : x) last = std::max(last, order.rank(i));
  Money total;
  for (const auto& it : tx.items) {
    if (x.contains(it.item) || !order.contains(it.item)) continue;
    if (order.rank(it.item) > last && !it.profit.negative()) total += it.profit;
  }
  return total;
}

}  // namespace op3m::measures
