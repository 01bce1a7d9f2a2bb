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

#include "op3m/opp_list.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <ostream>

namespace op3m {
namespace {

// Per-thread scratch for period aggregation, reset after each use.
struct PeriodScratch {
  std::vector<PeriodTotals> slots;
  std::vector<std::uint32_t> touched;

  void prepare(std::size_t period_count) {
    if (slots.size() < period_count) slots.resize(period_count);
  }
};

thread_local PeriodScratch scratch;

}  // namespace

OfuTable OfuTable::summarize(std::span<const OppEntry> entries, std::size_t period_count) {
  OfuTable t;
  scratch.prepare(period_count);
  for (const auto& e : entries) {
    assert(e.period < period_count);
    PeriodTotals& slot = scratch.slots[e.period];
    if (slot.sup == 0) {
      slot.period = e.period;
      scratch.touched.push_back(e.period);
    }
    ++slot.sup;
    slot.pp += e.pp;
    slot.np += e.np;
    slot.rpp += e.rpp;
    ++t.sup;
    t.pp += e.pp;
    t.np += e.np;
    t.rpp += e.rpp;
  }
  std::sort(scratch.touched.begin(), scratch.touched.end());
  t.by_period.reserve(scratch.touched.size());
  for (auto p : scratch.touched) {
    t.by_period.push_back(scratch.slots[p]);
    scratch.slots[p] = PeriodTotals{};
  }
  scratch.touched.clear();
  return t;
}

const PeriodTotals* OfuTable::at(std::uint32_t period) const {
  auto it = std::lower_bound(by_period.begin(), by_period.end(), period,
                             [](const PeriodTotals& t, std::uint32_t p) { return t.period < p; });
  return it != by_period.end() && it->period == period ? &*it : nullptr;
}

OppList::OppList(std::vector<ItemId> path, std::vector<OppEntry> entries, std::size_t period_count)
    : path_(std::move(path)), entries_(std::move(entries)), table_(OfuTable::summarize(entries_, period_count)) {}

PeriodSet OppList::periods(std::size_t period_count) const {
  PeriodSet os(period_count);
  for (const auto& t : table_.by_period) os.set(t.period);
  return os;
}

void OppList::dump(std::ostream& out, const Database& db) const {
  out << "tid\tpp\tnp\trpp\tperiod\n";
  for (const auto& e : entries_)
    out << e.tid << '\t' << e.pp.to_string() << '\t' << e.np.to_string() << '\t' << e.rpp.to_string() << '\t'
        << db.period_id(e.period) << '\n';
}

ItemOrder build_item_order(std::span<const ItemId> items, std::span<const Money> rtwu, const Database& db) {
  std::vector<std::size_t> idx(items.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    bool na = db.is_negative(items[a]), nb = db.is_negative(items[b]);
    if (na != nb) return nb;
    if (rtwu[a] != rtwu[b]) return rtwu[a] < rtwu[b];
    return items[a] < items[b];
  });
  std::vector<ItemId> ordered;
  ordered.reserve(items.size());
  for (auto k : idx) ordered.push_back(items[k]);
  return ItemOrder(std::move(ordered));
}

ItemOrder build_item_order(const Database& db) {
  auto items = db.items();
  std::vector<Money> rtwu(items.size());
  for (const auto& tx : db.transactions())
    for (const auto& it : tx.items) {
      auto pos = std::lower_bound(items.begin(), items.end(), it.item) - items.begin();
      rtwu[static_cast<std::size_t>(pos)] += tx.rtp;
    }
  return build_item_order(items, rtwu, db);
}

std::vector<OppList> build_initial_lists(const Database& db, const ItemOrder& order, const RankedVisitor& visit) {
  const std::size_t n = order.size();
  std::vector<std::vector<OppEntry>> entries(n);
  std::vector<RankedItem> projected;
  db.scan([&](const Transaction& tx) {
    projected.clear();
    for (const auto& it : tx.items)
      if (order.contains(it.item)) projected.push_back({order.rank(it.item), it.profit});
    std::sort(projected.begin(), projected.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; });
    Money remaining;
    for (std::size_t k = projected.size(); k-- > 0;) {
      const Money p = projected[k].profit;
      OppEntry e;
      e.tid = tx.tid;
      e.pp = p.negative() ? Money{} : p;
      e.np = p.negative() ? p : Money{};
      e.rpp = remaining;
      e.period = tx.period_index;
      entries[projected[k].rank].push_back(e);
      if (!p.negative()) remaining += p;
    }
    if (visit) visit(tx, projected);
  });
  std::vector<OppList> lists;
  lists.reserve(n);
  for (std::size_t r = 0; r < n; ++r)
    lists.emplace_back(std::vector<ItemId>{order.ordered()[r]}, std::move(entries[r]), db.period_count());
  return lists;
}

OppList construct(const OppList* prefix, const OppList& px, const OppList& py, std::size_t period_count) {
  auto a = px.entries();
  auto b = py.entries();
  std::span<const OppEntry> p = prefix != nullptr ? prefix->entries() : std::span<const OppEntry>{};
  std::vector<OppEntry> out;
  out.reserve(std::min(a.size(), b.size()));
  std::size_t i = 0, j = 0, k = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].tid < b[j].tid) {
      ++i;
    } else if (b[j].tid < a[i].tid) {
      ++j;
    } else {
      OppEntry e{a[i].tid, a[i].pp + b[j].pp, a[i].np + b[j].np, b[j].rpp, a[i].period};
      if (prefix != nullptr) {
        // The prefix list covers every tid of px, so this never runs off the end.
        while (k < p.size() && p[k].tid < e.tid) ++k;
        assert(k < p.size() && p[k].tid == e.tid);
        e.pp -= p[k].pp;
        e.np -= p[k].np;
      }
      out.push_back(e);
      ++i;
      ++j;
    }
  }
  std::vector<ItemId> path(px.path().begin(), px.path().end());
  path.push_back(py.last());
  return OppList(std::move(path), std::move(out), period_count);
}

OppList build_list(const ItemSet& x, const Database& db, const ItemOrder& order) {
  auto initial = build_initial_lists(db, order);
  std::vector<ItemId> path(x.begin(), x.end());
  std::sort(path.begin(), path.end(), [&](ItemId a, ItemId b) { return order.rank(a) < order.rank(b); });

  std::map<std::vector<ItemId>, OppList> memo;
  auto get = [&](auto&& self, const std::vector<ItemId>& p) -> const OppList& {
    if (p.size() == 1) return initial[order.rank(p[0])];
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    std::vector<ItemId> base(p.begin(), p.end() - 2);
    std::vector<ItemId> with_x(p.begin(), p.end() - 1);
    std::vector<ItemId> with_y = base;
    with_y.push_back(p.back());
    const OppList* prefix = base.empty() ? nullptr : &self(self, base);
    const OppList& px = self(self, with_x);
    const OppList& py = self(self, with_y);
    return memo.emplace(p, construct(prefix, px, py, db.period_count())).first->second;
  };
  if (path.empty()) return OppList{};
  return get(get, path);
}

}  // namespace op3m
