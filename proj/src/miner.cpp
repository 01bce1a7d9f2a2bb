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

#include "op3m/miner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include "op3m/opp_list.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace op3m {
namespace {

// Profit-side pruning test shared by the singleton filter, the pair table
// and the pp + rpp check. `bound(h)` must dominate p(Y, h) for every extension Y
// and every period h of os(Y); periods are visited through `each`.
//
// GLOBAL: Y qualifies only if sum_{os(Y)} (p(Y,h) - minpro*top(h)) >= 0 with
// top(Y) > 0, which needs some single h with bound(h) >= minpro*top(h). This
// holds whatever the signs of top(h), unlike a plain ratio-of-maxima check.
// PER_PERIOD: needs one h with top(h) > 0 and bound(h) >= minpro*top(h).
template <typename Each>
bool profit_bound_admits(const Database& db, const MiningParams& params, Each&& each) {
  bool any_admits = false;
  bool any_positive_top = false;
  Money bound_sum;
  const bool per_period = params.scope == ProfitScope::kPerPeriod;
  each([&](std::uint32_t h, Money bound) {
    Money top = db.period_profit_at(h);
    bound_sum += bound;
    if (top.positive()) any_positive_top = true;
    if (per_period && !top.positive()) return;
    if (at_least(bound.minor(), params.minpro, top.minor())) any_admits = true;
  });
  if (per_period) return any_admits;
  if (params.minpro.num > 0 && !bound_sum.positive()) return false;
  return any_admits && any_positive_top;
}

bool popular(const Database& db, const MiningParams& params, const PeriodTotals& t) {
  return at_least(t.sup, params.minfre, db.period_support_at(t.period));
}

// Per-(pair, period) RTWU over the I* ranks, dense upper triangle.
class PairRtwuTable {
 public:
  PairRtwuTable(std::size_t items, std::size_t periods)
      : n_(items), periods_(periods), cells_(pair_count(items) * periods) {}

  static std::uint64_t pair_count(std::size_t n) { return n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2; }

  void add(std::uint32_t a, std::uint32_t b, std::uint32_t period, Money v) { cells_[slot(a, b) + period] += v; }
  Money get(std::uint32_t a, std::uint32_t b, std::uint32_t period) const { return cells_[slot(a, b) + period]; }

 private:
  std::size_t slot(std::uint32_t a, std::uint32_t b) const {
    if (a > b) std::swap(a, b);
    std::size_t row = std::size_t{a} * n_ - std::size_t{a} * (a + 1) / 2;
    return (row + (b - a - 1)) * periods_;
  }

  std::size_t n_;
  std::size_t periods_;
  std::vector<Money> cells_;
};

class ResidentTracker {
 public:
  void add(std::uint64_t lists, std::uint64_t bytes) {
    raise(peak_lists_, lists_.fetch_add(lists) + lists);
    raise(peak_bytes_, bytes_.fetch_add(bytes) + bytes);
  }
  void remove(std::uint64_t lists, std::uint64_t bytes) {
    lists_.fetch_sub(lists);
    bytes_.fetch_sub(bytes);
  }
  std::uint64_t peak_lists() const { return peak_lists_.load(); }
  std::uint64_t peak_bytes() const { return peak_bytes_.load(); }

 private:
  static void raise(std::atomic<std::uint64_t>& peak, std::uint64_t v) {
    std::uint64_t cur = peak.load();
    while (v > cur && !peak.compare_exchange_weak(cur, v)) {
    }
  }
  std::atomic<std::uint64_t> lists_{0}, bytes_{0}, peak_lists_{0}, peak_bytes_{0};
};

std::uint64_t footprint(std::span<const OppList> lists) {
  std::uint64_t b = 0;
  for (const auto& l : lists) b += l.footprint();
  return b;
}

struct FirstScan {
  std::vector<Money> rtwu;                      // by position in db.items()
  std::vector<std::vector<Money>> rtwu_period;  // [item][period]
  std::vector<PeriodSet> os;                    // [item]
};

FirstScan scan_singletons(const Database& db) {
  auto items = db.items();
  const std::size_t periods = db.period_count();
  FirstScan s;
  s.rtwu.assign(items.size(), Money{});
  s.rtwu_period.assign(items.size(), std::vector<Money>(periods));
  s.os.assign(items.size(), PeriodSet(periods));
  db.scan([&](const Transaction& tx) {
    for (const auto& it : tx.items) {
      auto k = static_cast<std::size_t>(std::lower_bound(items.begin(), items.end(), it.item) - items.begin());
      s.rtwu[k] += tx.rtp;
      s.rtwu_period[k][tx.period_index] += tx.rtp;
      s.os[k].set(tx.period_index);
    }
  });
  return s;
}

std::vector<std::size_t> promising_positions(const Database& db, const MiningParams& params, const FirstScan& s) {
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < s.rtwu.size(); ++k) {
    bool ok = profit_bound_admits(db, params, [&](auto&& fn) {
      s.os[k].for_each([&](std::size_t h) { fn(static_cast<std::uint32_t>(h), s.rtwu_period[k][h]); });
    });
    if (ok) keep.push_back(k);
  }
  return keep;
}

class Searcher {
 public:
  Searcher(const Database& db, const MiningParams& params, const ItemOrder& order, const PairRtwuTable* pairs,
           ResidentTracker& tracker)
      : db_(db), params_(params), order_(order), pairs_(pairs), tracker_(tracker) {}

  std::vector<OpppResult> results;
  MineStats stats;

  // Handles node exts[i] (= P + x) and its subtree.
  void visit(const OppList* prefix, std::span<const OppList> exts, std::size_t i) {
    const OppList& px = exts[i];
    ++stats.visited_nodes;
    evaluate(px);
    if (!worth_expanding(px)) return;

    std::vector<OppList> next;
    for (std::size_t j = i + 1; j < exts.size(); ++j) {
      const OppList& py = exts[j];
      if (pairs_ != nullptr && !pair_admits(px, py)) {
        ++stats.pruned_pairs;
        continue;
      }
      OppList pxy = construct(prefix, px, py, db_.period_count());
      ++stats.constructed_lists;
      if (!pxy.empty()) next.push_back(std::move(pxy));
    }
    if (next.empty()) return;
    const std::uint64_t bytes = footprint(next);
    tracker_.add(next.size(), bytes);
    for (std::size_t k = 0; k < next.size(); ++k) visit(&px, next, k);
    tracker_.remove(next.size(), bytes);
  }

 private:
  void evaluate(const OppList& px) {
    const OfuTable& t = px.table();
    const bool per_period = params_.scope == ProfitScope::kPerPeriod;
    Money top;
    std::vector<PeriodId> qualifying;
    for (const auto& pt : t.by_period) {
      Money top_h = db_.period_profit_at(pt.period);
      top += top_h;
      if (!popular(db_, params_, pt)) continue;
      if (per_period &&
          !(top_h.positive() && at_least((pt.pp + pt.np).minor(), params_.minpro, top_h.minor())))
        continue;
      qualifying.push_back(db_.period_id(pt.period));
    }
    if (qualifying.empty()) return;
    if (!per_period) {
      if (!top.positive()) {
        ++stats.skipped_nonpositive_top;
        return;
      }
      if (!at_least(t.profit().minor(), params_.minpro, top.minor())) return;
    }
    OpppResult r;
    r.items = px.label();
    r.profit = t.profit();
    r.period_total = top;
    r.qualifying = std::move(qualifying);
    for (const auto& pt : t.by_period) {
      r.periods.push_back(db_.period_id(pt.period));
      r.support.emplace_back(db_.period_id(pt.period), pt.sup);
    }
    results.push_back(std::move(r));
  }

  bool worth_expanding(const OppList& px) {
    const auto& by_period = px.table().by_period;
    auto any_popular = [&] {
      return std::any_of(by_period.begin(), by_period.end(), [&](const auto& pt) { return popular(db_, params_, pt); });
    };
    auto bound_admits = [&](bool only_popular) {
      return profit_bound_admits(db_, params_, [&](auto&& fn) {
        for (const auto& pt : by_period)
          if (!only_popular || popular(db_, params_, pt)) fn(pt.period, pt.pp + pt.rpp);
      });
    };

    if (params_.scope == ProfitScope::kPerPeriod && params_.prune_freq && params_.prune_rpp) {
      // Both conditions must hold in one period for any descendant.
      if (bound_admits(true)) return true;
      if (!any_popular())
        ++stats.pruned_freq;
      else
        ++stats.pruned_rpp;
      return false;
    }
    if (params_.prune_freq && !any_popular()) {
      ++stats.pruned_freq;
      return false;
    }
    if (params_.prune_rpp && !bound_admits(false)) {
      ++stats.pruned_rpp;
      return false;
    }
    return true;
  }

  bool pair_admits(const OppList& px, const OppList& py) const {
    const std::uint32_t a = order_.rank(px.last());
    const std::uint32_t b = order_.rank(py.last());
    const auto& left = px.table().by_period;
    const auto& right = py.table().by_period;
    return profit_bound_admits(db_, params_, [&](auto&& fn) {
      std::size_t i = 0, j = 0;
      while (i < left.size() && j < right.size()) {
        if (left[i].period < right[j].period) {
          ++i;
        } else if (right[j].period < left[i].period) {
          ++j;
        } else {
          fn(left[i].period, pairs_->get(a, b, left[i].period));
          ++i;
          ++j;
        }
      }
    });
  }

  const Database& db_;
  const MiningParams& params_;
  const ItemOrder& order_;
  const PairRtwuTable* pairs_;
  ResidentTracker& tracker_;
};

}  // namespace

std::string to_string(ProfitScope scope) { return scope == ProfitScope::kGlobal ? "global" : "per-period"; }

ProfitScope parse_scope(const std::string& text) {
  if (text == "global") return ProfitScope::kGlobal;
  if (text == "per-period") return ProfitScope::kPerPeriod;
  throw std::invalid_argument("unknown scope '" + text + "' (expected global or per-period)");
}

void MiningParams::validate() const {
  if (minfre.num < 0 || minfre.num > minfre.den) throw std::invalid_argument("minfre must lie in [0, 1]");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

MineStats& MineStats::operator+=(const MineStats& o) {
  visited_nodes += o.visited_nodes;
  constructed_lists += o.constructed_lists;
  pruned_freq += o.pruned_freq;
  pruned_rpp += o.pruned_rpp;
  pruned_pairs += o.pruned_pairs;
  skipped_nonpositive_top += o.skipped_nonpositive_top;
  return *this;
}

std::vector<ItemId> filter_singletons(const Database& db, const MiningParams& params) {
  FirstScan s = scan_singletons(db);
  std::vector<ItemId> out;
  for (auto k : promising_positions(db, params, s)) out.push_back(db.items()[k]);
  return out;
}

MineOutput mine(const Database& db, const MiningParams& params) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t passes_before = db.passes();
  MineOutput out;

  // Pass one: singleton RTWU per period and os({i}).
  FirstScan first = scan_singletons(db);
  auto keep = promising_positions(db, params, first);
  std::vector<ItemId> promising;
  std::vector<Money> promising_rtwu;
  for (auto k : keep) {
    promising.push_back(db.items()[k]);
    promising_rtwu.push_back(first.rtwu[k]);
  }
  first = FirstScan{};
  const ItemOrder order = build_item_order(promising, promising_rtwu, db);

  const std::size_t n = order.size();
  const bool use_pairs = params.prune_pairs && PairRtwuTable::pair_count(n) * db.period_count() <= params.pair_table_budget;
  std::optional<PairRtwuTable> pairs;
  if (use_pairs) pairs.emplace(n, db.period_count());

  // Pass two: initial lists and, alongside, the pair table.
  RankedVisitor on_tx;
  if (pairs) {
    on_tx = [&](const Transaction& tx, std::span<const RankedItem> ranked) {
      for (std::size_t a = 0; a < ranked.size(); ++a)
        for (std::size_t b = a + 1; b < ranked.size(); ++b)
          pairs->add(ranked[a].rank, ranked[b].rank, tx.period_index, tx.rtp);
    };
  }
  std::vector<OppList> initial = build_initial_lists(db, order, on_tx);

  ResidentTracker tracker;
  tracker.add(initial.size(), footprint(initial));
  const PairRtwuTable* pair_ptr = pairs ? &*pairs : nullptr;

  std::vector<std::vector<OpppResult>> per_root(initial.size());
  std::vector<MineStats> stats_per_root(initial.size());
  auto run_root = [&](std::size_t i) {
    Searcher s(db, params, order, pair_ptr, tracker);
    s.visit(nullptr, initial, i);
    per_root[i] = std::move(s.results);
    stats_per_root[i] = s.stats;
  };

  const auto roots = static_cast<std::int64_t>(initial.size());
#ifdef _OPENMP
  if (params.threads > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(params.threads)
    for (std::int64_t i = 0; i < roots; ++i) run_root(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < roots; ++i) run_root(static_cast<std::size_t>(i));
  }
#else
  for (std::int64_t i = 0; i < roots; ++i) run_root(static_cast<std::size_t>(i));
#endif

  for (std::size_t i = 0; i < initial.size(); ++i) {
    out.stats += stats_per_root[i];
    for (auto& r : per_root[i]) out.patterns.push_back(std::move(r));
  }
  sort_results(out.patterns);

  out.stats.items = db.items().size();
  out.stats.promising_items = n;
  out.stats.pair_table_used = use_pairs;
  out.stats.peak_resident_lists = tracker.peak_lists();
  out.stats.peak_resident_bytes = tracker.peak_bytes();
  out.stats.scans = db.passes() - passes_before;
  out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void sort_results(std::vector<OpppResult>& results) {
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.items < b.items; });
}

std::string format_result(const OpppResult& r) {
  auto join = [](const std::vector<PeriodId>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k > 0) s += ',';
      s += std::to_string(v[k]);
    }
    return s;
  };
  return r.items.to_string() + '\t' + r.profit.to_string() + '\t' + r.relative_profit().to_fixed(6) + '\t' +
         join(r.periods) + '\t' + join(r.qualifying);
}

void write_results(std::ostream& out, std::span<const OpppResult> results) {
  for (const auto& r : results) out << format_result(r) << '\n';
}

}  // namespace op3m
