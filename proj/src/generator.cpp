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

#include "op3m/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace op3m::gen {

void GenConfig::validate() const {
  if (n_transactions <= 0 || n_items <= 0 || n_periods <= 0)
    throw std::invalid_argument("transaction, item and period counts must be positive");
  if (avg_transaction_length < 1.0) throw std::invalid_argument("average transaction length must be at least 1");
  if (quantity_min <= 0 || quantity_max < quantity_min) throw std::invalid_argument("invalid quantity range");
  if (profit_min < 0 || profit_max < profit_min || profit_max <= 0)
    throw std::invalid_argument("invalid unit-profit range");
  if (!(negative_fraction >= 0.0 && negative_fraction <= 1.0))
    throw std::invalid_argument("negative fraction must lie in [0, 1]");
  if (period_skew < 0.0 || item_skew < 0.0 || seasonality < 1.0)
    throw std::invalid_argument("skews must be non-negative and seasonality at least 1");
}

Dataset generate(const GenConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  const auto n = static_cast<std::size_t>(config.n_items);
  const auto periods = static_cast<std::size_t>(config.n_periods);

  std::vector<ItemId> ids(n);
  std::iota(ids.begin(), ids.end(), ItemId{1});
  std::vector<ItemId> shuffled = ids;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto n_negative = static_cast<std::size_t>(std::llround(config.negative_fraction * static_cast<double>(n)));
  std::vector<bool> negative(n + 1, false);
  for (std::size_t k = 0; k < n_negative; ++k) negative[shuffled[k]] = true;

  Dataset data;
  std::uniform_int_distribution<std::int64_t> profit(config.profit_min, config.profit_max);
  std::uniform_int_distribution<std::int64_t> loss(std::max<std::int64_t>(1, config.profit_min), config.profit_max);
  std::uniform_int_distribution<std::size_t> home_period(0, periods - 1);
  std::vector<std::size_t> home(n + 1);
  for (ItemId i : ids) {
    data.profits.insert(i, Money::from_units(negative[i] ? -loss(rng) : profit(rng)));
    home[i] = home_period(rng);
  }

  std::vector<double> period_weights(periods);
  for (std::size_t k = 0; k < periods; ++k) period_weights[k] = 1.0 / std::pow(static_cast<double>(k + 1), config.period_skew);
  std::discrete_distribution<std::size_t> pick_period(period_weights.begin(), period_weights.end());

  std::vector<std::discrete_distribution<std::size_t>> pick_item;
  pick_item.reserve(periods);
  for (std::size_t h = 0; h < periods; ++h) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
      w[k] = 1.0 / std::pow(static_cast<double>(k + 1), config.item_skew);
      if (home[ids[k]] == h) w[k] *= config.seasonality;
    }
    pick_item.emplace_back(w.begin(), w.end());
  }

  std::poisson_distribution<std::int64_t> extra_length(std::max(config.avg_transaction_length - 1.0, 1e-9));
  std::uniform_int_distribution<std::int64_t> quantity(config.quantity_min, config.quantity_max);
  std::vector<bool> chosen(n, false);
  std::vector<std::size_t> picked;
  data.transactions.reserve(static_cast<std::size_t>(config.n_transactions));
  for (std::int64_t t = 0; t < config.n_transactions; ++t) {
    const std::size_t h = pick_period(rng);
    const auto length = static_cast<std::size_t>(std::min<std::int64_t>(1 + extra_length(rng), config.n_items));
    picked.clear();
    for (std::size_t attempt = 0; picked.size() < length && attempt < 20 * length; ++attempt) {
      std::size_t k = pick_item[h](rng);
      if (chosen[k]) continue;
      chosen[k] = true;
      picked.push_back(k);
    }
    std::sort(picked.begin(), picked.end());
    RawTransaction tx{t + 1, static_cast<PeriodId>(h + 1), {}};
    for (auto k : picked) {
      tx.items.push_back({ids[k], quantity(rng)});
      chosen[k] = false;
    }
    data.transactions.push_back(std::move(tx));
  }
  return data;
}

std::vector<RawTransaction> regroup(std::vector<RawTransaction> txs, std::int64_t n_periods, std::uint64_t seed) {
  if (n_periods <= 0) throw std::invalid_argument("period count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<PeriodId> period(1, n_periods);
  for (auto& t : txs) t.period = period(rng);
  return txs;
}

Dataset random_small(std::uint64_t seed, std::int64_t max_items, std::int64_t max_transactions,
                     std::int64_t max_periods, double negative_fraction) {
  std::mt19937_64 rng(seed);
  auto between = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  GenConfig c;
  c.n_items = between(1, max_items);
  c.n_transactions = between(1, max_transactions);
  c.n_periods = between(1, max_periods);
  c.avg_transaction_length = std::uniform_real_distribution<double>(1.0, std::max(1.0, 0.6 * static_cast<double>(c.n_items)))(rng);
  c.quantity_min = 1;
  c.quantity_max = 4;
  c.profit_min = 0;
  c.profit_max = 10;
  c.negative_fraction = negative_fraction;
  c.item_skew = 0.5;
  c.seasonality = 2.0;
  c.period_skew = 0.3;
  c.seed = rng();
  return generate(c);
}

}  // namespace op3m::gen
