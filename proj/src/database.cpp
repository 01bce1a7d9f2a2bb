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

#include "op3m/database.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>
#include <unordered_set>

namespace op3m {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep, bool skip_empty) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    std::string_view tok = s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    if (!(skip_empty && tok.empty())) out.push_back(tok);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view s, std::size_t line, const char* what) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw InputError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  return v;
}

Money parse_money(std::string_view s, std::size_t line) {
  try {
    return Money::parse(s);
  } catch (const std::invalid_argument& e) {
    throw InputError(line, e.what());
  }
}

// Calls fn(line_number, content) for each non-blank, non-comment line.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string buf;
  std::size_t lineno = 0;
  while (std::getline(in, buf)) {
    ++lineno;
    std::string_view line(buf);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    fn(lineno, line);
  }
}

// Sorts by item id; rejects or merges repeats.
void normalize_items(std::vector<ItemQuantity>& items, bool merge, std::size_t line) {
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.item < b.item; });
  std::vector<ItemQuantity> out;
  out.reserve(items.size());
  for (const auto& iq : items) {
    if (!out.empty() && out.back().item == iq.item) {
      if (!merge) throw InputError(line, "duplicate item " + std::to_string(iq.item) + " in transaction");
      out.back().quantity += iq.quantity;
    } else {
      out.push_back(iq);
    }
  }
  items = std::move(out);
}

}  // namespace

void ProfitTable::insert(ItemId item, Money unit_profit) {
  if (!entries_.emplace(item, unit_profit).second)
    throw InputError(0, "duplicate item " + std::to_string(item) + " in profit table");
}

std::optional<Money> ProfitTable::find(ItemId item) const {
  auto it = entries_.find(item);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Transaction::find(ItemId item) const {
  auto it = std::lower_bound(items.begin(), items.end(), item,
                             [](const TxItem& t, ItemId id) { return t.item < id; });
  if (it == items.end() || it->item != item) return std::nullopt;
  return static_cast<std::size_t>(it - items.begin());
}

Database Database::from_raw(std::vector<RawTransaction> raw, const ProfitTable& table) {
  Database db;
  db.transactions_.reserve(raw.size());
  for (auto& r : raw) {
    Transaction t;
    t.tid = r.tid;
    t.period = r.period;
    if (r.period < 0) throw InputError(0, "negative period id in transaction " + std::to_string(r.tid));
    std::sort(r.items.begin(), r.items.end(), [](const auto& a, const auto& b) { return a.item < b.item; });
    t.items.reserve(r.items.size());
    for (const auto& iq : r.items) {
      if (iq.quantity <= 0)
        throw InputError(0, "non-positive quantity for item " + std::to_string(iq.item) + " in transaction " +
                                std::to_string(r.tid));
      if (!t.items.empty() && t.items.back().item == iq.item)
        throw InputError(0, "duplicate item " + std::to_string(iq.item) + " in transaction " + std::to_string(r.tid));
      auto up = table.find(iq.item);
      if (!up) throw InputError(0, "unknown item " + std::to_string(iq.item) + " in transaction " + std::to_string(r.tid));
      t.items.push_back({iq.item, iq.quantity, *up * iq.quantity});
    }
    db.transactions_.push_back(std::move(t));
  }
  for (const auto& [item, up] : table.entries())
    if (up.negative()) db.negative_items_.push_back(item);
  db.table_ = table;
  db.finalize();
  // Negative classes only for items that occur.
  std::erase_if(db.negative_items_,
                [&](ItemId i) { return !std::binary_search(db.items_.begin(), db.items_.end(), i); });
  return db;
}

Database Database::from_profits(std::vector<Transaction> txs) {
  Database db;
  std::set<ItemId> negative;
  for (auto& t : txs) {
    std::sort(t.items.begin(), t.items.end(), [](const auto& a, const auto& b) { return a.item < b.item; });
    for (std::size_t k = 1; k < t.items.size(); ++k)
      if (t.items[k].item == t.items[k - 1].item)
        throw InputError(0, "duplicate item " + std::to_string(t.items[k].item) + " in transaction " +
                                std::to_string(t.tid));
    if (t.period < 0) throw InputError(0, "negative period id in transaction " + std::to_string(t.tid));
    for (const auto& it : t.items)
      if (it.profit.negative()) negative.insert(it.item);
  }
  db.transactions_ = std::move(txs);
  db.negative_items_.assign(negative.begin(), negative.end());
  db.finalize();
  return db;
}

void Database::finalize() {
  std::sort(transactions_.begin(), transactions_.end(),
            [](const Transaction& a, const Transaction& b) { return a.tid < b.tid; });
  for (std::size_t k = 1; k < transactions_.size(); ++k)
    if (transactions_[k].tid == transactions_[k - 1].tid)
      throw InputError(0, "duplicate tid " + std::to_string(transactions_[k].tid));

  std::set<PeriodId> periods;
  std::set<ItemId> items;
  for (auto& t : transactions_) {
    periods.insert(t.period);
    t.tp = Money{};
    t.rtp = Money{};
    for (const auto& it : t.items) {
      items.insert(it.item);
      t.tp += it.profit;
      if (!it.profit.negative()) t.rtp += it.profit;
    }
  }
  periods_.assign(periods.begin(), periods.end());
  items_.assign(items.begin(), items.end());
  top_by_index_.assign(periods_.size(), Money{});
  sup_by_index_.assign(periods_.size(), 0);
  for (auto& t : transactions_) {
    t.period_index = *period_index(t.period);
    top_by_index_[t.period_index] += t.tp;
    ++sup_by_index_[t.period_index];
  }
}

bool Database::is_negative(ItemId item) const {
  return std::binary_search(negative_items_.begin(), negative_items_.end(), item);
}

std::optional<std::uint32_t> Database::period_index(PeriodId id) const {
  auto it = std::lower_bound(periods_.begin(), periods_.end(), id);
  if (it == periods_.end() || *it != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - periods_.begin());
}

Money Database::period_profit(PeriodId h) const {
  auto idx = period_index(h);
  return idx ? top_by_index_[*idx] : Money{};
}

std::int64_t Database::period_support(PeriodId h) const {
  auto idx = period_index(h);
  return idx ? sup_by_index_[*idx] : 0;
}

const Transaction* Database::find_tid(Tid tid) const {
  auto it = std::lower_bound(transactions_.begin(), transactions_.end(), tid,
                             [](const Transaction& t, Tid id) { return t.tid < id; });
  if (it == transactions_.end() || it->tid != tid) return nullptr;
  return &*it;
}

Money Database::tp(Tid tid) const {
  const Transaction* t = find_tid(tid);
  if (t == nullptr) throw std::out_of_range("unknown tid " + std::to_string(tid));
  return t->tp;
}

Money Database::rtp(Tid tid) const {
  const Transaction* t = find_tid(tid);
  if (t == nullptr) throw std::out_of_range("unknown tid " + std::to_string(tid));
  return t->rtp;
}

void Database::scan(const std::function<void(const Transaction&)>& visit) const {
  passes_.n.fetch_add(1, std::memory_order_relaxed);
  for (const auto& t : transactions_) visit(t);
}

std::vector<RawTransaction> Database::to_raw() const {
  std::vector<RawTransaction> out;
  out.reserve(transactions_.size());
  for (const auto& t : transactions_) {
    RawTransaction r{t.tid, t.period, {}};
    r.items.reserve(t.items.size());
    for (const auto& it : t.items) r.items.push_back({it.item, it.quantity});
    out.push_back(std::move(r));
  }
  return out;
}

ProfitTable parse_profit_table(std::istream& in) {
  ProfitTable table;
  for_each_line(in, [&](std::size_t lineno, std::string_view line) {
    auto fields = split(line, '\t', false);
    if (fields.size() != 2) throw InputError(lineno, "expected <item>\\t<unit-profit>");
    ItemId item = parse_int<ItemId>(fields[0], lineno, "item id");
    Money up = parse_money(fields[1], lineno);
    try {
      table.insert(item, up);
    } catch (const InputError& e) {
      throw InputError(lineno, e.what());
    }
  });
  return table;
}

std::vector<RawTransaction> parse_transactions(std::istream& in, const LoadOptions& options) {
  std::vector<RawTransaction> out;
  for_each_line(in, [&](std::size_t lineno, std::string_view line) {
    auto fields = split(line, '\t', false);
    if (fields.size() != 3) throw InputError(lineno, "expected <tid>\\t<period>\\t<item>:<qty> ...");
    RawTransaction r;
    r.tid = parse_int<Tid>(fields[0], lineno, "tid");
    r.period = parse_int<PeriodId>(fields[1], lineno, "period");
    if (r.period < 0) throw InputError(lineno, "negative period id");
    for (auto tok : split(fields[2], ' ', true)) {
      auto colon = tok.find(':');
      if (colon == std::string_view::npos) throw InputError(lineno, "expected <item>:<qty>, got '" + std::string(tok) + "'");
      ItemQuantity iq;
      iq.item = parse_int<ItemId>(tok.substr(0, colon), lineno, "item id");
      iq.quantity = parse_int<std::int64_t>(tok.substr(colon + 1), lineno, "quantity");
      if (iq.quantity <= 0) throw InputError(lineno, "non-positive quantity for item " + std::to_string(iq.item));
      r.items.push_back(iq);
    }
    normalize_items(r.items, options.merge_duplicates, lineno);
    out.push_back(std::move(r));
  });
  return out;
}

Database load_transactions(std::istream& in, const ProfitTable& table, const LoadOptions& options) {
  auto raw = parse_transactions(in, options);
  std::unordered_set<Tid> seen;
  for (const auto& r : raw) {
    if (!seen.insert(r.tid).second) throw InputError(0, "duplicate tid " + std::to_string(r.tid));
    for (const auto& iq : r.items)
      if (!table.find(iq.item))
        throw InputError(0, "unknown item " + std::to_string(iq.item) + " in transaction " + std::to_string(r.tid));
  }
  return Database::from_raw(std::move(raw), table);
}

Database load_spmf_period(std::istream& in, const LoadOptions& options) {
  std::vector<Transaction> txs;
  Tid next_tid = 1;
  for_each_line(in, [&](std::size_t lineno, std::string_view line) {
    auto parts = split(line, ':', false);
    if (parts.size() != 4) throw InputError(lineno, "expected items:TU:utilities:period");
    auto items = split(parts[0], ' ', true);
    auto utils = split(parts[2], ' ', true);
    if (items.size() != utils.size()) throw InputError(lineno, "item and utility counts differ");
    parse_money(parts[1], lineno);  // TU: syntax only
    Transaction t;
    t.tid = next_tid++;
    auto period_text = parts[3];
    while (!period_text.empty() && period_text.back() == ' ') period_text.remove_suffix(1);
    t.period = parse_int<PeriodId>(period_text, lineno, "period");
    if (t.period < 0) throw InputError(lineno, "negative period id");
    for (std::size_t k = 0; k < items.size(); ++k)
      t.items.push_back({parse_int<ItemId>(items[k], lineno, "item id"), 1, parse_money(utils[k], lineno)});
    std::sort(t.items.begin(), t.items.end(), [](const auto& a, const auto& b) { return a.item < b.item; });
    std::vector<TxItem> merged;
    for (const auto& it : t.items) {
      if (!merged.empty() && merged.back().item == it.item) {
        if (!options.merge_duplicates)
          throw InputError(lineno, "duplicate item " + std::to_string(it.item) + " in transaction");
        merged.back().profit += it.profit;
        merged.back().quantity += 1;
      } else {
        merged.push_back(it);
      }
    }
    t.items = std::move(merged);
    txs.push_back(std::move(t));
  });
  return Database::from_profits(std::move(txs));
}

void write_profit_table(std::ostream& out, const ProfitTable& table) {
  for (const auto& [item, up] : table.entries()) out << item << '\t' << up.to_string() << '\n';
}

void write_transactions(std::ostream& out, std::span<const RawTransaction> txs) {
  for (const auto& t : txs) {
    out << t.tid << '\t' << t.period << '\t';
    for (std::size_t k = 0; k < t.items.size(); ++k) {
      if (k > 0) out << ' ';
      out << t.items[k].item << ':' << t.items[k].quantity;
    }
    out << '\n';
  }
}

}  // namespace op3m
