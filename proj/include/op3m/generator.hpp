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
#include <vector>

#include "op3m/database.hpp"

namespace op3m::gen {

/// Synthetic retail data: Zipf-like item popularity, per-item seasonal
/// preference for one period, and a fraction of loss-making items.
struct GenConfig {
  std::int64_t n_transactions = 1000;
  std::int64_t n_items = 100;
  double avg_transaction_length = 5.0;
  std::int64_t quantity_min = 1;
  std::int64_t quantity_max = 5;
  std::int64_t profit_min = 1;  // unit profit magnitude, whole currency units
  std::int64_t profit_max = 20;
  double negative_fraction = 0.1;
  std::int64_t n_periods = 5;
  /// 0 spreads transactions evenly over periods; larger values concentrate
  /// them in the first periods (weight of period k is 1 / (k + 1)^skew).
  double period_skew = 0.0;
  /// Popularity exponent over item ranks; 0 is uniform.
  double item_skew = 0.8;
  /// Extra weight multiplier an item gets in its home period.
  double seasonality = 2.0;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument for non-positive counts, inverted ranges
  /// or a negative fraction outside [0, 1].
  void validate() const;
};

struct Dataset {
  ProfitTable profits;
  std::vector<RawTransaction> transactions;  // tids 1..n, periods 1..n_periods
};

/// Deterministic for a fixed config (including seed).
Dataset generate(const GenConfig& config);

/// Same transactions with each period replaced by a uniform draw from
/// 1..n_periods.
std::vector<RawTransaction> regroup(std::vector<RawTransaction> txs, std::int64_t n_periods, std::uint64_t seed);

/// Small random instance for oracle cross-checks: 1..max_items items,
/// 1..max_transactions transactions, 1..max_periods periods, a share of
/// negative-profit items, zero-profit items allowed.
Dataset random_small(std::uint64_t seed, std::int64_t max_items = 12, std::int64_t max_transactions = 40,
                     std::int64_t max_periods = 4, double negative_fraction = 0.2);

}  // namespace op3m::gen
