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

#include "op3m/oracle.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "op3m/measures.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace op3m::oracle {
namespace {

std::optional<OpppResult> test_subset(const ItemSet& x, const Database& db, const MiningParams& params,
                                      const Options& options) {
  PeriodSet os = measures::periods(x, db);
  if (os.empty()) return std::nullopt;

  std::vector<PeriodId> qualifying;
  for (auto idx : os.members()) {
    PeriodId h = db.period_id(idx);
    if (!measures::relative_frequency(x, h, db).at_least(params.minfre)) continue;
    if (!options.frequency_only && params.scope == ProfitScope::kPerPeriod) {
      if (!db.period_profit(h).positive()) continue;
      if (!measures::relative_profit_in_period(x, h, db).at_least(params.minpro)) continue;
    }
    qualifying.push_back(h);
  }
  if (qualifying.empty()) return std::nullopt;

  Money top = measures::total_period_profit(x, db);
  if (!options.frequency_only && params.scope == ProfitScope::kGlobal) {
    if (!top.positive()) return std::nullopt;
    if (!measures::relative_profit(x, db).at_least(params.minpro)) return std::nullopt;
  }

  OpppResult r;
  r.items = x;
  r.profit = measures::profit(x, db);
  r.period_total = top;
  r.qualifying = std::move(qualifying);
  for (auto idx : os.members()) {
    PeriodId h = db.period_id(idx);
    r.periods.push_back(h);
    r.support.emplace_back(h, measures::support_in_period(x, h, db));
  }
  return r;
}

std::string join(const std::vector<PeriodId>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) s += ',';
    s += std::to_string(v[k]);
  }
  return s;
}

std::string support_string(const OpppResult& r) {
  std::string s;
  for (const auto& [h, n] : r.support) {
    if (!s.empty()) s += ',';
    s += std::to_string(h) + ':' + std::to_string(n);
  }
  return s;
}

}  // namespace

Report enumerate(const Database& db, const MiningParams& params, const Options& options) {
  auto items = db.items();
  const std::size_t m = items.size();
  if (m > options.item_cap || m > 62)
    throw CapExceeded("database has " + std::to_string(m) + " items, oracle cap is " +
                      std::to_string(options.item_cap));
  Report report;
  if (m == 0) return report;
  const std::uint64_t last = (std::uint64_t{1} << m) - 1;
  report.enumerated = last;

  auto subset = [&](std::uint64_t mask) {
    std::vector<ItemId> x;
    for (std::size_t b = 0; b < m; ++b)
      if (mask >> b & 1U) x.push_back(items[b]);
    return ItemSet(std::move(x));
  };

  int threads = options.threads < 1 ? 1 : options.threads;
  std::vector<std::vector<OpppResult>> found(static_cast<std::size_t>(threads));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 256) num_threads(threads) if (threads > 1)
#endif
  for (std::int64_t mask = 1; mask <= static_cast<std::int64_t>(last); ++mask) {
    std::size_t slot = 0;
#ifdef _OPENMP
    slot = static_cast<std::size_t>(omp_get_thread_num());
#endif
    if (auto r = test_subset(subset(static_cast<std::uint64_t>(mask)), db, params, options))
      found[slot].push_back(std::move(*r));
  }
  for (auto& part : found)
    for (auto& r : part) report.patterns.push_back(std::move(r));
  sort_results(report.patterns);
  return report;
}

std::string Diff::to_string() const {
  std::ostringstream out;
  for (const auto& m : mismatches)
    out << '{' << m.items << "} " << m.field << ": " << m.left << " vs " << m.right << '\n';
  return out.str();
}

Diff diff(std::span<const OpppResult> left, std::span<const OpppResult> right) {
  Diff d;
  std::size_t i = 0, j = 0;
  while (i < left.size() || j < right.size()) {
    if (j == right.size() || (i < left.size() && left[i].items < right[j].items)) {
      d.mismatches.push_back({left[i].items.to_string(), "missing-right", format_result(left[i]), "-"});
      ++i;
    } else if (i == left.size() || right[j].items < left[i].items) {
      d.mismatches.push_back({right[j].items.to_string(), "missing-left", "-", format_result(right[j])});
      ++j;
    } else {
      const OpppResult& a = left[i];
      const OpppResult& b = right[j];
      const std::string key = a.items.to_string();
      if (a.profit != b.profit) d.mismatches.push_back({key, "profit", a.profit.to_string(), b.profit.to_string()});
      if (!a.relative_profit().same_value(b.relative_profit()))
        d.mismatches.push_back(
            {key, "relative_profit", a.relative_profit().to_fixed(6), b.relative_profit().to_fixed(6)});
      if (a.periods != b.periods) d.mismatches.push_back({key, "periods", join(a.periods), join(b.periods)});
      if (a.qualifying != b.qualifying)
        d.mismatches.push_back({key, "qualifying", join(a.qualifying), join(b.qualifying)});
      if (a.support != b.support) d.mismatches.push_back({key, "support", support_string(a), support_string(b)});
      ++i;
      ++j;
    }
  }
  return d;
}

}  // namespace op3m::oracle
