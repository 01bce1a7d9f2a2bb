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

// Exhaustive reference enumerator. Tests every non-empty subset of the
// database's items against the OPPP definition using only the measures
// module: no lists, no bounds, no pruning.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "op3m/database.hpp"
#include "op3m/miner.hpp"

namespace op3m::oracle {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t item_cap = 20;
  /// Drop the profit condition entirely (popular-in-some-period only).
  bool frequency_only = false;
  int threads = 1;
};

struct Report {
  std::vector<OpppResult> patterns;  // canonical order
  std::uint64_t enumerated = 0;      // subsets tested, 2^m - 1
};

/// Throws CapExceeded when the database has more than options.item_cap items.
Report enumerate(const Database& db, const MiningParams& params, const Options& options = {});

struct Mismatch {
  std::string items;  // "1 3"
  std::string field;  // "missing-left", "missing-right", "profit", "relative_profit", ...
  std::string left;
  std::string right;
};

struct Diff {
  std::vector<Mismatch> mismatches;
  bool empty() const { return mismatches.empty(); }
  std::string to_string() const;
};

/// Symmetric difference of two canonically ordered result lists, with
/// per-field mismatches for patterns present in both.
Diff diff(std::span<const OpppResult> left, std::span<const OpppResult> right);

}  // namespace op3m::oracle
