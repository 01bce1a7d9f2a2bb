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

// Definition-level profit and frequency measures. Every function here is a
// direct scan over the database with no incremental state; the oracle and
// the tests use them as ground truth for the miner's list structures.

#include <stdexcept>

#include "op3m/database.hpp"
#include "op3m/itemset.hpp"
#include "op3m/money.hpp"
#include "op3m/period_set.hpp"

namespace op3m::measures {

/// X is not contained in the transaction it was evaluated against.
class ContainmentError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Period outside os(X), empty os(X), or a zero denominator.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool contains(const Transaction& tx, const ItemSet& x);

/// p(X, Tc)
Money profit_in_tx(const ItemSet& x, const Transaction& tx);
/// Positive part of p(X, Tc): sum of the non-negative item profits.
Money positive_profit_in_tx(const ItemSet& x, const Transaction& tx);
/// Negative part of p(X, Tc).
Money negative_profit_in_tx(const ItemSet& x, const Transaction& tx);

/// os(X); empty when X occurs nowhere.
PeriodSet periods(const ItemSet& x, const Database& db);

/// sup(X, h): containing transactions in period h.
std::int64_t support_in_period(const ItemSet& x, PeriodId h, const Database& db);
std::int64_t support(const ItemSet& x, const Database& db);

/// p(X, h). Throws DomainError if h is not in os(X).
Money profit_in_period(const ItemSet& x, PeriodId h, const Database& db);
/// p(X); zero when X never occurs.
Money profit(const ItemSet& x, const Database& db);

/// top(X): sum of tp over every transaction whose period is in os(X),
/// containing X or not. Throws DomainError when os(X) is empty.
Money total_period_profit(const ItemSet& x, const Database& db);

/// rp(X) = p(X) / top(X) as an exact ratio of minor units. Throws
/// DomainError when os(X) is empty or top(X) is zero.
Fraction relative_profit(const ItemSet& x, const Database& db);

/// rf(X, h) = sup(X, h) / sup(h). Throws DomainError when sup(h) is zero.
Fraction relative_frequency(const ItemSet& x, PeriodId h, const Database& db);

/// rp(X, h) = p(X, h) / top(h). Throws DomainError when h is not in os(X)
/// or top(h) is zero.
Fraction relative_profit_in_period(const ItemSet& x, PeriodId h, const Database& db);

/// RTWU(X): sum of rtp over containing transactions.
Money rtwu(const ItemSet& x, const Database& db);
Money rtwu_in_period(const ItemSet& x, PeriodId h, const Database& db);

/// rpp(X, Tc): non-negative profits of the items of Tc outside X that come
/// after every member of X in `order`. Items not in `order` are ignored.
Money remaining_positive_profit(const ItemSet& x, const Transaction& tx, const ItemOrder& order);

}  // namespace op3m::measures
