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

// Five-transaction, six-product retail example used across the suites.
// Products a..f are items 1..6. T4 carries d with quantity 1, which is what
// the published transaction profits (tp(T4) = rtp(T4) = 20) require.

#include <sstream>
#include <string>

#include "op3m/database.hpp"
#include "op3m/generator.hpp"

namespace op3m::testing {

enum Product : ItemId { a = 1, b = 2, c = 3, d = 4, e = 5, f = 6 };

inline const char* kProfitTable =
    "# product\tunit profit\n"
    "1\t3\n"
    "2\t-2\n"
    "3\t4\n"
    "4\t1\n"
    "5\t7\n"
    "6\t5\n";

inline const char* kTransactions =
    "1\t1\t2:2 3:1 5:3\n"
    "2\t1\t1:1 2:1 3:2 6:1\n"
    "3\t2\t1:3 2:6 3:4 4:1 5:1 6:2\n"
    "4\t2\t3:3 4:1 5:1\n"
    "5\t3\t1:1 4:2 5:3 6:1\n";

inline ProfitTable running_profits() {
  std::istringstream in(kProfitTable);
  return parse_profit_table(in);
}

inline Database running_example() {
  std::istringstream in(kTransactions);
  return load_transactions(in, running_profits());
}

inline Database to_database(const gen::Dataset& data) { return Database::from_raw(data.transactions, data.profits); }

}  // namespace op3m::testing
